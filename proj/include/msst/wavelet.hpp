#ifndef MSST_WAVELET_HPP
#define MSST_WAVELET_HPP

#include "msst/field.hpp"

#include <memory>
#include <string>
#include <vector>

namespace msst {

// Isotropic Morlet wavelet, psi_hat(xi) = exp(-pi^2 sigma (|xi| - mu)^2).
struct WaveletSpec {
    double mu = 1.0;
    double sigma = 2.0;
    // Overall factor on psi_hat; 1 everywhere except in linearity checks.
    double gain = 1.0;
};

void validate(const WaveletSpec& spec);

double morlet_hat(const WaveletSpec& spec, double radius);
double morlet_hat(const WaveletSpec& spec, double xi1, double xi2);

// Reconstruction constant 2 pi * int_0^inf psi_hat(rho) / rho d rho.
// The radial integral is truncated below at rho = mu e^{-20}: the Morlet
// spectrum does not vanish at DC, and the guard on psi_hat(0) keeps the
// neglected logarithmic tail below 1e-7 relative.
double tilde_c_psi(const WaveletSpec& spec);
// Admissibility constant (2 pi)^2 * 2 pi * int psi_hat(rho)^2 / rho d rho.
double c_psi(const WaveletSpec& spec);

// Scales a_j = 2^{j / n_voices}, j = j_min .. j_max.
struct ScaleGrid {
    int n_voices = 32;
    int j_min = 0;
    int j_max = 0;

    std::size_t size() const { return static_cast<std::size_t>(j_max - j_min + 1); }
    double scale(std::size_t index) const;
    std::vector<double> scales() const;
};

void validate(const ScaleGrid& grid);

// Scale range whose centre frequencies mu / a run from two periods per domain
// (times `safety`) up to Nyquist, pi / dx.
ScaleGrid default_scale_grid(const WaveletSpec& spec, Index height, Index width, double dx, int n_voices = 32,
                             double safety = 1.0);

// Coefficients of the monogenic signal at one scale: c_F and its spatial
// derivatives d/db1, d/db2 (each a Clifford field c_f + c_{R1 f} i + c_{R2 f} j).
struct ScaleCoefficients {
    double scale = 1.0;
    Clifford coeff;
    Clifford db1;
    Clifford db2;
};

struct ScaleStack {
    WaveletSpec spec;
    ScaleGrid grid;
    std::vector<ScaleCoefficients> levels;
    std::vector<std::string> warnings;

    Index width() const { return levels.empty() ? 0 : levels.front().coeff.width(); }
    Index height() const { return levels.empty() ? 0 : levels.front().coeff.height(); }
    double dx() const { return levels.empty() ? 1.0 : levels.front().coeff.dx; }
};

// Per-scale evaluator: holds the spectrum of f and evaluates every operator as a
// single Fourier multiplier, so scales can be streamed without keeping a stack.
class MonogenicCwt {
public:
    MonogenicCwt(const Field& f, const WaveletSpec& spec);
    ~MonogenicCwt();
    MonogenicCwt(MonogenicCwt&&) noexcept;
    MonogenicCwt& operator=(MonogenicCwt&&) noexcept;

    const WaveletSpec& spec() const { return spec_; }
    Index height() const { return height_; }
    Index width() const { return width_; }
    double dx() const { return dx_; }

    ScaleCoefficients at(double scale, bool with_derivatives = true) const;
    // max_b |c_F(a, b)|
    double max_modulus(double scale) const;
    // True when the wavelet at this scale overlaps the sampled spectrum.
    bool covers_spectrum(double scale) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    WaveletSpec spec_;
    Index height_ = 0;
    Index width_ = 0;
    double dx_ = 1.0;
};

ScaleStack monogenic_cwt(const Field& f, const WaveletSpec& spec, const ScaleGrid& grid);

// (2 pi / C~) * sum_j (ln 2 / n_v) c_f(a_j, x) / a_j.
Field pointwise_reconstruct(const ScaleStack& stack);

}  // namespace msst

#endif  // MSST_WAVELET_HPP
