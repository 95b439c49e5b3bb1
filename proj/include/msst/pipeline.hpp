#ifndef MSST_PIPELINE_HPP
#define MSST_PIPELINE_HPP

#include "msst/squeeze.hpp"

#include <string>
#include <vector>

namespace msst {

struct SqueezeRun {
    SqueezeStack squeeze;
    ScaleGrid grid;
    double gamma = 0.0;
    std::vector<std::string> warnings;
};

// Transform, estimate and squeeze scale by scale without keeping a ScaleStack:
// a first pass finds max |c_F| for the relative threshold, a second pass
// reallocates each scale as soon as it is computed.
SqueezeRun squeeze_streaming(const Field& f, const WaveletSpec& spec, const ScaleGrid& grid, const FrequencyBins& bins,
                             double gamma_relative);

// Same result from a stored stack.
SqueezeRun squeeze_stack(const ScaleStack& stack, const FrequencyBins& bins, double gamma_relative);

// Absolute threshold from a relative one; stays positive for an all-zero transform.
double absolute_gamma(double peak, double gamma_relative);

}  // namespace msst

#endif  // MSST_PIPELINE_HPP
