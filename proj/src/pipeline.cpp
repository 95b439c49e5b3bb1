#include "msst/pipeline.hpp"

#include <algorithm>
#include <limits>

namespace msst {

double absolute_gamma(double peak, double gamma_relative) {
    return std::max(gamma_relative * peak, std::numeric_limits<double>::min());
}

SqueezeRun squeeze_streaming(const Field& f, const WaveletSpec& spec, const ScaleGrid& grid, const FrequencyBins& bins,
                             double gamma_relative) {
    validate(grid);
    const MonogenicCwt cwt(f, spec);
    SqueezeRun run;
    run.grid = grid;
    double peak = 0.0;
    bool any_coverage = false;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        peak = std::max(peak, cwt.max_modulus(grid.scale(j)));
        any_coverage = any_coverage || cwt.covers_spectrum(grid.scale(j));
    }
    if (!any_coverage) run.warnings.emplace_back("empty scale coverage");
    run.gamma = absolute_gamma(peak, gamma_relative);
    IsotropicSqueezer squeezer(bins, f.height(), f.width(), f.dx, grid.n_voices, run.gamma);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const ScaleCoefficients level = cwt.at(grid.scale(j));
        squeezer.add(level, estimate_scale(level, run.gamma));
    }
    run.squeeze = std::move(squeezer).finish();
    return run;
}

SqueezeRun squeeze_stack(const ScaleStack& stack, const FrequencyBins& bins, double gamma_relative) {
    SqueezeRun run;
    run.grid = stack.grid;
    run.warnings = stack.warnings;
    run.gamma = absolute_gamma(relative_gamma(stack, 1.0), gamma_relative);
    IsotropicSqueezer squeezer(bins, stack.height(), stack.width(), stack.dx(), stack.grid.n_voices, run.gamma);
    for (const auto& level : stack.levels) squeezer.add(level, estimate_scale(level, run.gamma));
    run.squeeze = std::move(squeezer).finish();
    return run;
}

}  // namespace msst
