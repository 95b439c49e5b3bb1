#include "msst/squeeze.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace msst {

std::optional<std::size_t> FrequencyBins::locate(double k) const {
    if (!(k >= edges.front()) || !(k < edges.back())) return std::nullopt;
    const auto it = std::upper_bound(edges.begin(), edges.end(), k);
    return static_cast<std::size_t>(it - edges.begin()) - 1;
}

std::size_t FrequencyBins::nearest(double k) const {
    if (auto p = locate(k)) return *p;
    return k < edges.front() ? 0 : size() - 1;
}

void validate(const FrequencyBins& bins) {
    if (bins.k_values.empty()) throw std::invalid_argument("frequency bins are empty");
    if (bins.edges.size() != bins.k_values.size() + 1) throw std::invalid_argument("frequency bins: edge count");
    for (std::size_t p = 0; p < bins.size(); ++p)
        if (!(bins.edges[p] <= bins.k_values[p] && bins.k_values[p] < bins.edges[p + 1]))
            throw std::invalid_argument("frequency bins: centres must be strictly increasing inside their edges");
}

namespace {

FrequencyBins geometric_from_centres(std::vector<double> centres, int per_octave) {
    FrequencyBins bins;
    const double half_step = std::exp2(0.5 / per_octave);
    bins.edges.reserve(centres.size() + 1);
    bins.edges.push_back(centres.front() / half_step);
    for (std::size_t p = 0; p + 1 < centres.size(); ++p) bins.edges.push_back(std::sqrt(centres[p] * centres[p + 1]));
    bins.edges.push_back(centres.back() * half_step);
    bins.k_values = std::move(centres);
    return bins;
}

}  // namespace

FrequencyBins log_bins(double k_min, double k_max, int per_octave) {
    if (!(k_min > 0.0) || !(k_max >= k_min) || per_octave < 1)
        throw std::invalid_argument("log_bins: need 0 < k_min <= k_max and per_octave >= 1");
    const auto last = static_cast<int>(std::ceil(per_octave * std::log2(k_max / k_min) - 1e-9));
    std::vector<double> centres;
    for (int p = 0; p <= last; ++p) centres.push_back(k_min * std::exp2(static_cast<double>(p) / per_octave));
    return geometric_from_centres(std::move(centres), per_octave);
}

FrequencyBins matched_bins(const WaveletSpec& spec, const ScaleGrid& grid) {
    validate(grid);
    std::vector<double> centres(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) centres[grid.size() - 1 - j] = spec.mu / grid.scale(j);
    return geometric_from_centres(std::move(centres), grid.n_voices);
}

FrequencyBins linear_bins(double lo, double hi, std::size_t count) {
    if (!(hi > lo) || count == 0) throw std::invalid_argument("linear_bins: need lo < hi and count >= 1");
    FrequencyBins bins;
    const double step = (hi - lo) / static_cast<double>(count);
    for (std::size_t p = 0; p <= count; ++p) bins.edges.push_back(lo + step * static_cast<double>(p));
    for (std::size_t p = 0; p < count; ++p) bins.k_values.push_back(lo + step * (static_cast<double>(p) + 0.5));
    return bins;
}

SqueezeStack::SqueezeStack(FrequencyBins b, Index h, Index w, double dx_)
    : bins(std::move(b)), height(h), width(w), dx(dx_), kept_sum(h, w, dx_) {
    validate(bins);
    data.assign(static_cast<std::size_t>(h * w) * bins.size(), {});
}

Clifford SqueezeStack::plane(std::size_t bin) const {
    if (bin >= bins.size()) throw std::out_of_range("SqueezeStack::plane: bin out of range");
    Clifford out(height, width, dx);
    for (Index r = 0; r < height; ++r)
        for (Index c = 0; c < width; ++c) out.set(r, c, at(r, c, bin));
    return out;
}

Clifford SqueezeStack::total() const {
    Clifford out(height, width, dx);
    for (Index r = 0; r < height; ++r) {
        for (Index c = 0; c < width; ++c) {
            CliffordVector<double> acc;
            for (std::size_t p = 0; p < bins.size(); ++p) acc += at(r, c, p);
            out.set(r, c, acc);
        }
    }
    return out;
}

double SqueezeStack::dropped_mass_fraction() const {
    const double all = kept_mass + dropped_mass;
    return all > 0.0 ? dropped_mass / all : 0.0;
}

IsotropicSqueezer::IsotropicSqueezer(FrequencyBins bins, Index height, Index width, double dx, int n_voices,
                                     double gamma)
    : sq_(std::move(bins), height, width, dx), voice_weight_(std::log(2.0) / n_voices) {
    sq_.gamma = gamma;
}

void IsotropicSqueezer::add(const ScaleCoefficients& level, const ScaleEstimate& est) {
    const double weight = voice_weight_ / level.scale;
    for (Index r = 0; r < sq_.height; ++r) {
        for (Index c = 0; c < sq_.width; ++c) {
            if (!est.valid(r, c)) continue;
            CliffordVector<double> v = level.coeff.at(r, c);
            v *= weight;
            const auto bin = sq_.bins.locate(est.k_iso(r, c));
            if (!bin) {
                sq_.dropped_mass += v.norm();
                continue;
            }
            sq_.kept_mass += v.norm();
            sq_.at(r, c, *bin) += v;
            auto acc = sq_.kept_sum.at(r, c);
            acc += v;
            sq_.kept_sum.set(r, c, acc);
        }
    }
}

SqueezeStack IsotropicSqueezer::finish() && { return std::move(sq_); }

SqueezeStack msst_isotropic(const ScaleStack& stack, const FrequencyEstimate& est, const FrequencyBins& bins) {
    if (est.scales.size() != stack.levels.size())
        throw std::invalid_argument("msst_isotropic: estimate does not match stack");
    IsotropicSqueezer squeezer(bins, stack.height(), stack.width(), stack.dx(), stack.grid.n_voices, est.gamma);
    for (std::size_t j = 0; j < stack.levels.size(); ++j) squeezer.add(stack.levels[j], est.scales[j]);
    return std::move(squeezer).finish();
}

const CliffordVector<double>& DirectionalSqueeze::at(std::size_t o, std::size_t p1, std::size_t p2, Index row,
                                                     Index col) const {
    const auto pixels = static_cast<std::size_t>(height * width);
    return data[((o * bins1.size() + p1) * bins2.size() + p2) * pixels + static_cast<std::size_t>(row * width + col)];
}

Clifford DirectionalSqueeze::orientation_total(std::size_t o) const {
    Clifford out(height, width, dx);
    for (Index r = 0; r < height; ++r) {
        for (Index c = 0; c < width; ++c) {
            CliffordVector<double> acc;
            for (std::size_t p1 = 0; p1 < bins1.size(); ++p1)
                for (std::size_t p2 = 0; p2 < bins2.size(); ++p2) acc += at(o, p1, p2, r, c);
            out.set(r, c, acc);
        }
    }
    return out;
}

DirectionalSqueeze msst_directional(const ScaleStack& stack, const FrequencyEstimate& est,
                                    const FrequencyBins& bins1, const FrequencyBins& bins2,
                                    const std::vector<double>& orientations, std::size_t max_entries) {
    validate(bins1);
    validate(bins2);
    if (orientations.empty()) throw std::invalid_argument("msst_directional: empty orientation set");
    if (est.scales.size() != stack.levels.size())
        throw std::invalid_argument("msst_directional: estimate does not match stack");
    const auto pixels = static_cast<std::size_t>(stack.height() * stack.width());
    const std::size_t entries = bins1.size() * bins2.size() * orientations.size() * pixels;
    if (entries > max_entries)
        throw std::length_error("msst_directional: " + std::to_string(entries) + " entries exceed budget of " +
                                std::to_string(max_entries));

    DirectionalSqueeze out;
    out.bins1 = bins1;
    out.bins2 = bins2;
    out.orientations = orientations;
    out.height = stack.height();
    out.width = stack.width();
    out.dx = stack.dx();
    out.data.assign(entries, {});
    const double voice_weight = std::log(2.0) / stack.grid.n_voices;
    for (std::size_t j = 0; j < stack.levels.size(); ++j) {
        const auto& level = stack.levels[j];
        const auto& s = est.scales[j];
        if (!s.lambda1 || !s.lambda2) throw std::invalid_argument("msst_directional: lambda fields required");
        for (std::size_t o = 0; o < orientations.size(); ++o) {
            const Quaternion<double> n{0.0, std::cos(orientations[o]), std::sin(orientations[o]), 0.0};
            for (Index r = 0; r < out.height; ++r) {
                for (Index c = 0; c < out.width; ++c) {
                    if (!s.valid(r, c)) continue;
                    CliffordVector<double> v = level.coeff.at(r, c);
                    v *= voice_weight / level.scale;
                    const double k1 = mul(s.lambda1->at(r, c), conj(n)).w;
                    const double k2 = mul(s.lambda2->at(r, c), conj(n)).w;
                    const auto p1 = bins1.locate(k1);
                    const auto p2 = bins2.locate(k2);
                    if (!p1 || !p2) {
                        out.dropped_mass += v.norm();
                        continue;
                    }
                    out.kept_mass += v.norm();
                    out.data[((o * bins1.size() + *p1) * bins2.size() + *p2) * pixels +
                             static_cast<std::size_t>(r * out.width + c)] += v;
                }
            }
        }
    }
    return out;
}

Clifford reconstruct_from_squeeze(const SqueezeStack& sq, const WaveletSpec& spec) {
    Clifford out = sq.total();
    const double norm = 2.0 * std::numbers::pi / tilde_c_psi(spec);
    out.re *= norm;
    out.ri *= norm;
    out.rj *= norm;
    return out;
}

void write_slice_csv(std::ostream& os, const SqueezeStack& sq, Index row) {
    if (row < 0 || row >= sq.height) throw std::out_of_range("slice row outside image");
    os << "x,k,abs_S\n";
    for (Index c = 0; c < sq.width; ++c)
        for (std::size_t p = 0; p < sq.bins.size(); ++p)
            os << c * sq.dx << ',' << sq.bins.k_values[p] << ',' << sq.at(row, c, p).norm() << '\n';
}

}  // namespace msst
