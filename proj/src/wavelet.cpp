#include "msst/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msst {

namespace {

constexpr double kPi = std::numbers::pi;

// Effective support of psi_hat: |rho - mu| <= 4 / (pi sqrt(sigma)), where psi_hat < e^{-16}.
double support_halfwidth(const WaveletSpec& spec) { return 4.0 / (kPi * std::sqrt(spec.sigma)); }

double dc_value(const WaveletSpec& spec) { return morlet_hat(spec, 0.0); }

void check_dc(const WaveletSpec& spec) {
    if (dc_value(spec) > 1e-6 * spec.gain) throw std::domain_error("wavelet insufficiently vanishing at DC");
}

// Trapezoid rule on t = ln rho, refined by interval halving until two
// successive estimates agree to 1e-8 relative.
template <typename Integrand>
double log_radial_integral(const WaveletSpec& spec, Integrand&& g) {
    const double t0 = std::log(spec.mu) - 20.0;
    const double t1 = std::log(spec.mu + 12.0 / (kPi * std::sqrt(spec.sigma)));
    auto f = [&](double t) { return g(std::exp(t)); };
    std::size_t n = 64;
    double h = (t1 - t0) / static_cast<double>(n);
    double sum = 0.5 * (f(t0) + f(t1));
    for (std::size_t k = 1; k < n; ++k) sum += f(t0 + h * static_cast<double>(k));
    double estimate = sum * h;
    for (int level = 0; level < 24; ++level) {
        for (std::size_t k = 0; k < n; ++k) sum += f(t0 + h * (static_cast<double>(k) + 0.5));
        n *= 2;
        h *= 0.5;
        const double refined = sum * h;
        const bool converged = std::abs(refined - estimate) < 1e-8 * std::abs(refined);
        estimate = refined;
        if (converged && n >= 1024) return estimate;
    }
    return estimate;
}

}  // namespace

void validate(const WaveletSpec& spec) {
    if (!(spec.mu > 0.0) || !std::isfinite(spec.mu)) throw std::invalid_argument("wavelet mu must be positive");
    if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) throw std::invalid_argument("wavelet sigma must be positive");
    if (!(spec.gain > 0.0) || !std::isfinite(spec.gain)) throw std::invalid_argument("wavelet gain must be positive");
}

double morlet_hat(const WaveletSpec& spec, double radius) {
    const double d = radius - spec.mu;
    return spec.gain * std::exp(-kPi * kPi * spec.sigma * d * d);
}

double morlet_hat(const WaveletSpec& spec, double xi1, double xi2) { return morlet_hat(spec, std::hypot(xi1, xi2)); }

double tilde_c_psi(const WaveletSpec& spec) {
    validate(spec);
    check_dc(spec);
    return 2.0 * kPi * log_radial_integral(spec, [&](double rho) { return morlet_hat(spec, rho); });
}

double c_psi(const WaveletSpec& spec) {
    validate(spec);
    check_dc(spec);
    const double radial = log_radial_integral(spec, [&](double rho) {
        const double v = morlet_hat(spec, rho);
        return v * v;
    });
    return 8.0 * kPi * kPi * kPi * radial;
}

double ScaleGrid::scale(std::size_t index) const {
    return std::exp2(static_cast<double>(j_min + static_cast<int>(index)) / static_cast<double>(n_voices));
}

std::vector<double> ScaleGrid::scales() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale(i);
    return out;
}

void validate(const ScaleGrid& grid) {
    if (grid.n_voices < 1) throw std::invalid_argument("scale grid needs n_voices >= 1");
    if (grid.j_max < grid.j_min) throw std::invalid_argument("scale grid is empty (j_max < j_min)");
}

ScaleGrid default_scale_grid(const WaveletSpec& spec, Index height, Index width, double dx, int n_voices,
                             double safety) {
    validate(spec);
    const double extent = static_cast<double>(std::max(height, width)) * dx;
    const double k_low = 2.0 * 2.0 * kPi / extent * safety;
    const double k_high = kPi / dx;
    ScaleGrid grid;
    grid.n_voices = n_voices;
    grid.j_min = static_cast<int>(std::floor(n_voices * std::log2(spec.mu / k_high)));
    grid.j_max = static_cast<int>(std::ceil(n_voices * std::log2(spec.mu / k_low)));
    validate(grid);
    return grid;
}

struct MonogenicCwt::Impl {
    RealFft2 fft;
    ComplexPlane spectrum;
    // Per half-spectrum bin: radius and the odd coordinates (zero on Nyquist lines).
    Plane<double> rho, odd1, odd2, even11, even22;
    double max_radius = 0.0;
    double min_radius = 0.0;

    Impl(const Field& f) : fft(f.height(), f.width()) {
        spectrum = fft.forward(f.values);
        const FrequencyGrid2D grid(f.height(), f.width(), f.dx);
        const Index h = f.height();
        const Index hc = fft.half_cols();
        rho.resize(h, hc);
        odd1.resize(h, hc);
        odd2.resize(h, hc);
        even11.resize(h, hc);
        even22.resize(h, hc);
        for (Index r = 0; r < h; ++r) {
            for (Index c = 0; c < hc; ++c) {
                const double x1 = grid.xi1[c];
                const double x2 = grid.xi2[r];
                rho(r, c) = std::hypot(x1, x2);
                odd1(r, c) = grid.nyquist_col(c) ? 0.0 : x1;
                odd2(r, c) = grid.nyquist_row(r) ? 0.0 : x2;
                even11(r, c) = x1 * x1;
                even22(r, c) = x2 * x2;
            }
        }
        max_radius = grid.max_radius();
        min_radius = std::min(std::abs(grid.xi1[1]), std::abs(grid.xi2[1]));
    }
};

MonogenicCwt::MonogenicCwt(const Field& f, const WaveletSpec& spec)
    : spec_(spec), height_(f.height()), width_(f.width()), dx_(f.dx) {
    validate_field(f);
    validate(spec);
    impl_ = std::make_unique<Impl>(f);
}

MonogenicCwt::~MonogenicCwt() = default;
MonogenicCwt::MonogenicCwt(MonogenicCwt&&) noexcept = default;
MonogenicCwt& MonogenicCwt::operator=(MonogenicCwt&&) noexcept = default;

bool MonogenicCwt::covers_spectrum(double scale) const {
    const double hw = support_halfwidth(spec_);
    return scale * impl_->max_radius >= spec_.mu - hw && scale * impl_->min_radius <= spec_.mu + hw;
}

ScaleCoefficients MonogenicCwt::at(double scale, bool with_derivatives) const {
    const Impl& im = *impl_;
    const Index h = height_;
    const Index hc = im.fft.half_cols();
    const int planes = with_derivatives ? 9 : 3;
    std::vector<ComplexPlane> spectra(static_cast<std::size_t>(planes), ComplexPlane(h, hc));
    const std::complex<double> I(0.0, 1.0);
    for (Index r = 0; r < h; ++r) {
        for (Index c = 0; c < hc; ++c) {
            const double rho = im.rho(r, c);
            const std::complex<double> g = scale * morlet_hat(spec_, scale * rho) * im.spectrum(r, c);
            const double inv_rho = rho > 0.0 ? 1.0 / rho : 0.0;
            const double o1 = im.odd1(r, c);
            const double o2 = im.odd2(r, c);
            spectra[0](r, c) = g;
            spectra[1](r, c) = -I * (o1 * inv_rho) * g;
            spectra[2](r, c) = -I * (o2 * inv_rho) * g;
            if (!with_derivatives) continue;
            // d/db_k multiplies by i xi_k; the Riesz-derivative products are real and even
            spectra[3](r, c) = I * o1 * g;
            spectra[4](r, c) = im.even11(r, c) * inv_rho * g;
            spectra[5](r, c) = o1 * o2 * inv_rho * g;
            spectra[6](r, c) = I * o2 * g;
            spectra[7](r, c) = o1 * o2 * inv_rho * g;
            spectra[8](r, c) = im.even22(r, c) * inv_rho * g;
        }
    }
    ScaleCoefficients out;
    out.scale = scale;
    auto fill = [&](Clifford& target, int first) {
        target.dx = dx_;
        im.fft.inverse(spectra[first], target.re);
        im.fft.inverse(spectra[first + 1], target.ri);
        im.fft.inverse(spectra[first + 2], target.rj);
    };
    fill(out.coeff, 0);
    if (with_derivatives) {
        fill(out.db1, 3);
        fill(out.db2, 6);
    }
    return out;
}

double MonogenicCwt::max_modulus(double scale) const { return at(scale, false).coeff.modulus().maxCoeff(); }

ScaleStack monogenic_cwt(const Field& f, const WaveletSpec& spec, const ScaleGrid& grid) {
    validate(grid);
    const MonogenicCwt cwt(f, spec);
    ScaleStack stack;
    stack.spec = spec;
    stack.grid = grid;
    stack.levels.reserve(grid.size());
    bool any_coverage = false;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double a = grid.scale(j);
        any_coverage = any_coverage || cwt.covers_spectrum(a);
        stack.levels.push_back(cwt.at(a));
    }
    if (!any_coverage) stack.warnings.emplace_back("empty scale coverage");
    return stack;
}

Field pointwise_reconstruct(const ScaleStack& stack) {
    if (stack.levels.empty()) throw std::invalid_argument("pointwise_reconstruct: empty stack");
    const double voice_weight = std::log(2.0) / static_cast<double>(stack.grid.n_voices);
    Field out(stack.height(), stack.width(), stack.dx());
    for (const auto& level : stack.levels) out.values += (voice_weight / level.scale) * level.coeff.re;
    out.values *= 2.0 * kPi / tilde_c_psi(stack.spec);
    return out;
}

}  // namespace msst
