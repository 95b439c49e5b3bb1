#ifndef MSST_FIELD_HPP
#define MSST_FIELD_HPP

#include "msst/fft.hpp"
#include "msst/quaternion.hpp"

#include <Eigen/Core>

#include <utility>
#include <vector>

namespace msst {

using Eigen::Index;

// Samples on a uniform periodic grid. Row index is the vertical coordinate
// y = row * dx, column index the horizontal coordinate x = col * dx.
template <typename Scalar = double>
struct ScalarField {
    Plane<Scalar> values;
    double dx = 1.0;

    ScalarField() = default;
    ScalarField(Index height, Index width, double dx_) : values(Plane<Scalar>::Zero(height, width)), dx(dx_) {}
    ScalarField(Plane<Scalar> v, double dx_) : values(std::move(v)), dx(dx_) {}

    Index width() const { return values.cols(); }
    Index height() const { return values.rows(); }
    Scalar operator()(Index row, Index col) const { return values(row, col); }
    Scalar& operator()(Index row, Index col) { return values(row, col); }
};

// f + g i + h j on the grid; the three planes always share one geometry.
template <typename Scalar = double>
struct CliffordField {
    Plane<Scalar> re;
    Plane<Scalar> ri;
    Plane<Scalar> rj;
    double dx = 1.0;

    CliffordField() = default;
    CliffordField(Index height, Index width, double dx_)
        : re(Plane<Scalar>::Zero(height, width)),
          ri(Plane<Scalar>::Zero(height, width)),
          rj(Plane<Scalar>::Zero(height, width)),
          dx(dx_) {}

    Index width() const { return re.cols(); }
    Index height() const { return re.rows(); }

    CliffordVector<Scalar> at(Index row, Index col) const { return {re(row, col), ri(row, col), rj(row, col)}; }
    void set(Index row, Index col, const CliffordVector<Scalar>& q) {
        re(row, col) = q.w;
        ri(row, col) = q.x;
        rj(row, col) = q.y;
    }
    ScalarField<Scalar> scalar_part() const { return {re, dx}; }
    Plane<Scalar> modulus() const { return (re.square() + ri.square() + rj.square()).sqrt(); }
};

// Four planes (w, x, y, z), used for the quaternion-valued frequency fields.
template <typename Scalar = double>
struct QuaternionField {
    Plane<Scalar> w, x, y, z;

    QuaternionField() = default;
    QuaternionField(Index height, Index width)
        : w(Plane<Scalar>::Zero(height, width)),
          x(Plane<Scalar>::Zero(height, width)),
          y(Plane<Scalar>::Zero(height, width)),
          z(Plane<Scalar>::Zero(height, width)) {}

    Quaternion<Scalar> at(Index row, Index col) const { return {w(row, col), x(row, col), y(row, col), z(row, col)}; }
    void set(Index row, Index col, const Quaternion<Scalar>& q) {
        w(row, col) = q.w;
        x(row, col) = q.x;
        y(row, col) = q.y;
        z(row, col) = q.z;
    }
};

using Field = ScalarField<double>;
using Clifford = CliffordField<double>;

// Throws std::invalid_argument unless width, height >= 8 and both even.
void validate_geometry(Index height, Index width);
// validate_geometry plus dx > 0 and finite samples.
void validate_field(const Field& f);

// Angular frequencies of the DFT bins, xi = 2 pi m / (n dx) with
// m in [-n/2, n/2); the Nyquist bin carries its negative representative.
struct FrequencyGrid2D {
    std::vector<double> xi1;  // per column (horizontal frequency)
    std::vector<double> xi2;  // per row (vertical frequency)

    FrequencyGrid2D(Index height, Index width, double dx);

    Index width() const { return static_cast<Index>(xi1.size()); }
    Index height() const { return static_cast<Index>(xi2.size()); }
    bool nyquist_col(Index col) const { return 2 * col == width(); }
    bool nyquist_row(Index row) const { return 2 * row == height(); }
    double max_radius() const;
};

ComplexPlane fft2(const Field& f);
// Real part of the inverse transform (input assumed Hermitian up to rounding).
Field ifft2_real(const ComplexPlane& g, double dx);

// Components (R1 f, R2 f) via the multiplier -i xi_k / |xi|, zero at DC.
// On a Nyquist line the odd multiplier has no real-valued counterpart, so the
// component along that axis is zero there.
std::pair<Field, Field> riesz(const Field& f);

// f + (R1 f) i + (R2 f) j.
Clifford monogenic(const Field& f);

// Exact grid rotation R_theta f(x) = f(r_theta^{-1} x) by quarter turns about
// sample (0, 0), periodic. Square fields only.
Field rotate_quarter(const Field& f, int quarter_turns);
Field circular_shift(const Field& f, Index drow, Index dcol);

double inner(const Field& f, const Field& g);

}  // namespace msst

#endif  // MSST_FIELD_HPP
