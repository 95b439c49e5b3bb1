#ifndef MSST_SQUEEZE_HPP
#define MSST_SQUEEZE_HPP

#include "msst/estimate.hpp"

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

namespace msst {

// Bin centres k_values with edges[p] <= k < edges[p+1] for bin p.
struct FrequencyBins {
    std::vector<double> k_values;
    std::vector<double> edges;

    std::size_t size() const { return k_values.size(); }
    double delta_k(std::size_t bin) const { return edges[bin + 1] - edges[bin]; }
    std::optional<std::size_t> locate(double k) const;
    // Bin whose centre is closest to k on the axis of the bins (clamped).
    std::size_t nearest(double k) const;
};

void validate(const FrequencyBins& bins);

// Log-spaced centres with `per_octave` bins per octave from k_min to k_max;
// edges are geometric midpoints, the outer edges half a step beyond.
FrequencyBins log_bins(double k_min, double k_max, int per_octave);
// Centres mu / a_j for the scale grid, ascending.
FrequencyBins matched_bins(const WaveletSpec& spec, const ScaleGrid& grid);
// `count` equal-width bins tiling [lo, hi]; used for the signed directional axes.
FrequencyBins linear_bins(double lo, double hi, std::size_t count);

// S_F(b, k) on a dense (pixel, bin) layout.
struct SqueezeStack {
    FrequencyBins bins;
    double gamma = 0.0;
    Index height = 0;
    Index width = 0;
    double dx = 1.0;
    std::vector<CliffordVector<double>> data;  // index (row * width + col) * bins + bin
    // (ln2 / n_v) * sum over kept scales of c_F / a, accumulated in scale order.
    Clifford kept_sum;
    double kept_mass = 0.0;
    double dropped_mass = 0.0;

    SqueezeStack() = default;
    SqueezeStack(FrequencyBins b, Index h, Index w, double dx_);

    std::size_t pixel(Index row, Index col) const { return static_cast<std::size_t>(row * width + col); }
    const CliffordVector<double>& at(Index row, Index col, std::size_t bin) const {
        return data[pixel(row, col) * bins.size() + bin];
    }
    CliffordVector<double>& at(Index row, Index col, std::size_t bin) {
        return data[pixel(row, col) * bins.size() + bin];
    }
    Clifford plane(std::size_t bin) const;
    // sum_k S_F(b, k) in ascending bin order.
    Clifford total() const;
    double dropped_mass_fraction() const;
};

// Streaming reallocation: feed scales in ascending order, then take the stack.
class IsotropicSqueezer {
public:
    IsotropicSqueezer(FrequencyBins bins, Index height, Index width, double dx, int n_voices, double gamma);
    void add(const ScaleCoefficients& level, const ScaleEstimate& est);
    SqueezeStack finish() &&;

private:
    SqueezeStack sq_;
    double voice_weight_;
};

SqueezeStack msst_isotropic(const ScaleStack& stack, const FrequencyEstimate& est, const FrequencyBins& bins);

struct DirectionalSqueeze {
    FrequencyBins bins1;
    FrequencyBins bins2;
    std::vector<double> orientations;
    Index height = 0;
    Index width = 0;
    double dx = 1.0;
    std::vector<CliffordVector<double>> data;  // index ((o * n1 + p1) * n2 + p2) * pixels + pixel
    double kept_mass = 0.0;
    double dropped_mass = 0.0;

    const CliffordVector<double>& at(std::size_t o, std::size_t p1, std::size_t p2, Index row, Index col) const;
    // sum over (k1, k2) at orientation o.
    Clifford orientation_total(std::size_t o) const;
};

// Requires lambda fields in `est`. Refuses grids with more than `max_entries`
// (bins1 x bins2 x orientations x pixels) stored values.
DirectionalSqueeze msst_directional(const ScaleStack& stack, const FrequencyEstimate& est,
                                    const FrequencyBins& bins1, const FrequencyBins& bins2,
                                    const std::vector<double>& orientations, std::size_t max_entries = 50'000'000);

// (2 pi / C~) * sum_k S_F(b, k)
Clifford reconstruct_from_squeeze(const SqueezeStack& sq, const WaveletSpec& spec);

// x,k,abs_S for one image row.
void write_slice_csv(std::ostream& os, const SqueezeStack& sq, Index row);

}  // namespace msst

#endif  // MSST_SQUEEZE_HPP
