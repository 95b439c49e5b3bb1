#ifndef MSST_ESTIMATE_HPP
#define MSST_ESTIMATE_HPP

#include "msst/wavelet.hpp"

#include <optional>
#include <ostream>
#include <vector>

namespace msst {

using Mask = Plane<bool>;

// Frequency fields at one scale. Entries with valid == false hold zeros.
struct ScaleEstimate {
    double scale = 1.0;
    Plane<double> omega1;
    Plane<double> omega2;
    Plane<double> k_iso;
    Plane<double> theta;
    Mask valid;
    // Lambda_i = d_{b_i} c_F * c_F^{-1}; kept only on request.
    std::optional<QuaternionField<double>> lambda1;
    std::optional<QuaternionField<double>> lambda2;
};

struct FrequencyEstimate {
    double gamma = 0.0;
    std::vector<ScaleEstimate> scales;
};

// Fused per-scale estimate: Lambda fields, |Lambda_i|, the sign of omega2 from
// sgn Re(d_{b1} c_F * conj(d_{b2} c_F)) with sgn(0) = +1, theta and k_iso.
ScaleEstimate estimate_scale(const ScaleCoefficients& level, double gamma, bool keep_lambda = false);

// Lambda fields and unsigned frequencies (omega2 = |Lambda_2|) for every scale.
FrequencyEstimate lambda_fields(const ScaleStack& stack, double gamma);
// Applies the sign rule to omega2 and refreshes theta.
FrequencyEstimate signed_frequencies(FrequencyEstimate est, const ScaleStack& stack);

// gamma = relative * max_{a,b} |c_F(a,b)|
double relative_gamma(const ScaleStack& stack, double relative = 1e-4);
double relative_gamma(const MonogenicCwt& cwt, const ScaleGrid& grid, double relative = 1e-4);

// Rows b1,b2,a,k_iso,theta,abs_cF for valid entries.
void write_estimate_csv(std::ostream& os, const FrequencyEstimate& est, const ScaleStack& stack);

}  // namespace msst

#endif  // MSST_ESTIMATE_HPP
