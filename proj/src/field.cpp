#include "msst/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace msst {

void validate_geometry(Index height, Index width) {
    if (width < 8 || height < 8 || width % 2 != 0 || height % 2 != 0)
        throw std::invalid_argument("field geometry must be even and at least 8x8, got " + std::to_string(width) +
                                    "x" + std::to_string(height));
}

void validate_field(const Field& f) {
    validate_geometry(f.height(), f.width());
    if (!(f.dx > 0.0) || !std::isfinite(f.dx)) throw std::invalid_argument("field spacing dx must be positive");
    if (!f.values.allFinite()) throw std::invalid_argument("field contains non-finite samples");
}

FrequencyGrid2D::FrequencyGrid2D(Index height, Index width, double dx) : xi1(width), xi2(height) {
    auto fill = [dx](std::vector<double>& xi) {
        const auto n = static_cast<Index>(xi.size());
        const double step = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
        for (Index m = 0; m < n; ++m) {
            const Index signed_m = (2 * m >= n) ? m - n : m;
            xi[m] = step * static_cast<double>(signed_m);
        }
    };
    fill(xi1);
    fill(xi2);
}

double FrequencyGrid2D::max_radius() const {
    return std::hypot(xi1[static_cast<std::size_t>(width() / 2)], xi2[static_cast<std::size_t>(height() / 2)]);
}

ComplexPlane fft2(const Field& f) {
    validate_field(f);
    return fft2(ComplexPlane(f.values.cast<std::complex<double>>()));
}

Field ifft2_real(const ComplexPlane& g, double dx) { return Field(ifft2(g).real(), dx); }

std::pair<Field, Field> riesz(const Field& f) {
    validate_field(f);
    const Index h = f.height();
    const Index w = f.width();
    const FrequencyGrid2D grid(h, w, f.dx);
    const RealFft2 fft(h, w);
    const ComplexPlane spectrum = fft.forward(f.values);
    ComplexPlane s1(h, fft.half_cols());
    ComplexPlane s2(h, fft.half_cols());
    const std::complex<double> minus_i(0.0, -1.0);
    for (Index r = 0; r < h; ++r) {
        const double o2 = grid.nyquist_row(r) ? 0.0 : grid.xi2[r];
        for (Index c = 0; c < fft.half_cols(); ++c) {
            const double o1 = grid.nyquist_col(c) ? 0.0 : grid.xi1[c];
            const double rho = std::hypot(grid.xi1[c], grid.xi2[r]);
            if (rho == 0.0) {
                s1(r, c) = 0.0;
                s2(r, c) = 0.0;
                continue;
            }
            s1(r, c) = minus_i * (o1 / rho) * spectrum(r, c);
            s2(r, c) = minus_i * (o2 / rho) * spectrum(r, c);
        }
    }
    return {Field(fft.inverse(std::move(s1)), f.dx), Field(fft.inverse(std::move(s2)), f.dx)};
}

Clifford monogenic(const Field& f) {
    auto [r1, r2] = riesz(f);
    Clifford out;
    out.re = f.values;
    out.ri = std::move(r1.values);
    out.rj = std::move(r2.values);
    out.dx = f.dx;
    return out;
}

Field rotate_quarter(const Field& f, int quarter_turns) {
    if (f.width() != f.height()) throw std::invalid_argument("rotate_quarter: field must be square");
    const Index n = f.width();
    const int q = ((quarter_turns % 4) + 4) % 4;
    // r_theta^{-1} (x1, x2) for theta = q * 90 degrees, with exact integer cos/sin
    static constexpr int kCos[4] = {1, 0, -1, 0};
    static constexpr int kSin[4] = {0, 1, 0, -1};
    const Index c = kCos[q];
    const Index s = kSin[q];
    auto wrap = [n](Index v) { return ((v % n) + n) % n; };
    Field out(n, n, f.dx);
    for (Index row = 0; row < n; ++row) {
        for (Index col = 0; col < n; ++col) {
            const Index src_x1 = c * col + s * row;
            const Index src_x2 = -s * col + c * row;
            out(row, col) = f(wrap(src_x2), wrap(src_x1));
        }
    }
    return out;
}

Field circular_shift(const Field& f, Index drow, Index dcol) {
    const Index h = f.height();
    const Index w = f.width();
    Field out(h, w, f.dx);
    for (Index row = 0; row < h; ++row)
        for (Index col = 0; col < w; ++col)
            out(row, col) = f((((row - drow) % h) + h) % h, (((col - dcol) % w) + w) % w);
    return out;
}

double inner(const Field& f, const Field& g) {
    if (f.height() != g.height() || f.width() != g.width()) throw std::invalid_argument("inner: geometry mismatch");
    return (f.values * g.values).sum();
}

}  // namespace msst
