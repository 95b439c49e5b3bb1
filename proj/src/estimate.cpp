#include "msst/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace msst {

namespace {

using Q = Quaternion<double>;

ScaleEstimate estimate_impl(const ScaleCoefficients& level, double gamma, bool keep_lambda, bool apply_sign) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    const Index h = level.coeff.height();
    const Index w = level.coeff.width();
    ScaleEstimate out;
    out.scale = level.scale;
    out.omega1 = Plane<double>::Zero(h, w);
    out.omega2 = Plane<double>::Zero(h, w);
    out.k_iso = Plane<double>::Zero(h, w);
    out.theta = Plane<double>::Zero(h, w);
    out.valid = Mask::Constant(h, w, false);
    if (keep_lambda) {
        out.lambda1.emplace(h, w);
        out.lambda2.emplace(h, w);
    }
    for (Index r = 0; r < h; ++r) {
        for (Index c = 0; c < w; ++c) {
            const auto cf = level.coeff.at(r, c);
            if (!(cf.norm() > gamma)) continue;
            const Q inv = inverse(Q(cf));
            const Q d1 = level.db1.at(r, c);
            const Q d2 = level.db2.at(r, c);
            const Q l1 = mul(d1, inv);
            const Q l2 = mul(d2, inv);
            const double o1 = norm(l1);
            double o2 = norm(l2);
            if (apply_sign && mul(d1, conj(d2)).w < 0.0) o2 = -o2;
            out.omega1(r, c) = o1;
            out.omega2(r, c) = o2;
            out.k_iso(r, c) = std::hypot(o1, o2);
            out.theta(r, c) = std::atan2(o2, o1);
            out.valid(r, c) = true;
            if (keep_lambda) {
                out.lambda1->set(r, c, l1);
                out.lambda2->set(r, c, l2);
            }
        }
    }
    return out;
}

}  // namespace

ScaleEstimate estimate_scale(const ScaleCoefficients& level, double gamma, bool keep_lambda) {
    return estimate_impl(level, gamma, keep_lambda, true);
}

FrequencyEstimate lambda_fields(const ScaleStack& stack, double gamma) {
    FrequencyEstimate est;
    est.gamma = gamma;
    est.scales.reserve(stack.levels.size());
    for (const auto& level : stack.levels) est.scales.push_back(estimate_impl(level, gamma, true, false));
    return est;
}

FrequencyEstimate signed_frequencies(FrequencyEstimate est, const ScaleStack& stack) {
    if (est.scales.size() != stack.levels.size())
        throw std::invalid_argument("signed_frequencies: estimate does not match stack");
    for (std::size_t j = 0; j < est.scales.size(); ++j) {
        auto& s = est.scales[j];
        const auto& level = stack.levels[j];
        for (Index r = 0; r < s.valid.rows(); ++r) {
            for (Index c = 0; c < s.valid.cols(); ++c) {
                if (!s.valid(r, c)) continue;
                const double magnitude = std::abs(s.omega2(r, c));
                const bool negative = mul(Q(level.db1.at(r, c)), conj(Q(level.db2.at(r, c)))).w < 0.0;
                s.omega2(r, c) = negative ? -magnitude : magnitude;
                s.theta(r, c) = std::atan2(s.omega2(r, c), s.omega1(r, c));
            }
        }
    }
    return est;
}

double relative_gamma(const ScaleStack& stack, double relative) {
    double peak = 0.0;
    for (const auto& level : stack.levels) peak = std::max(peak, level.coeff.modulus().maxCoeff());
    return relative * peak;
}

double relative_gamma(const MonogenicCwt& cwt, const ScaleGrid& grid, double relative) {
    double peak = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) peak = std::max(peak, cwt.max_modulus(grid.scale(j)));
    return relative * peak;
}

void write_estimate_csv(std::ostream& os, const FrequencyEstimate& est, const ScaleStack& stack) {
    os << "b1,b2,a,k_iso,theta,abs_cF\n";
    const double dx = stack.dx();
    for (std::size_t j = 0; j < est.scales.size(); ++j) {
        const auto& s = est.scales[j];
        const auto& level = stack.levels[j];
        for (Index r = 0; r < s.valid.rows(); ++r)
            for (Index c = 0; c < s.valid.cols(); ++c)
                if (s.valid(r, c))
                    os << c * dx << ',' << r * dx << ',' << s.scale << ',' << s.k_iso(r, c) << ',' << s.theta(r, c)
                       << ',' << level.coeff.at(r, c).norm() << '\n';
    }
}

}  // namespace msst
