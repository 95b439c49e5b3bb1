#ifndef MSST_MODES_HPP
#define MSST_MODES_HPP

#include "msst/squeeze.hpp"

#include <vector>

namespace msst {

struct RidgeSurface {
    Plane<int> bin;
    Plane<double> k_hat;
    double captured_energy = 0.0;
    bool low_energy = false;
};

enum class RidgeMethod {
    // Best-first region growing from the strongest point, each pixel choosing
    // the strongest bin near the bin of the neighbour that reached it.
    tracking,
    // Independent per-pixel argmax of the 3x3-summed magnitude.
    neighborhood_argmax,
};

struct RidgeOptions {
    RidgeMethod method = RidgeMethod::tracking;
    int peel_bins = 5;
    int search_bins = 3;
    int median_passes = 3;
    double low_energy_fraction = 0.01;
};

// Ridges ordered by decreasing captured energy |S_F| within +-peel_bins.
std::vector<RidgeSurface> extract_ridges(const SqueezeStack& sq, int n_modes, const RidgeOptions& options = {});

struct ExtractedMode {
    Clifford clifford;
    RidgeSurface ridge;
    Field amplitude;
    Field phase;
    Field orientation;
};

// (2 pi / C~) * sum of S_F(b, k) over bins within kappa_bins of the ridge,
// demodulated pixelwise; zero pixels demodulate to (0, 0, 0).
ExtractedMode reconstruct_mode(const SqueezeStack& sq, const RidgeSurface& ridge, int kappa_bins,
                               const WaveletSpec& spec);

// Keeps [m, N - m) per axis with m = floor(N * fraction).
Field trim_border(const Field& f, double fraction);
Clifford trim_border(const Clifford& f, double fraction);

// ||estimate - reference|| / ||reference||
double mse(const Field& estimate, const Field& reference);

// assignment[i] = index of the estimate matched to reference i, minimising the
// summed MSE over all one-to-one assignments.
std::vector<std::size_t> match_modes(const std::vector<Field>& estimates, const std::vector<Field>& references);

}  // namespace msst

#endif  // MSST_MODES_HPP
