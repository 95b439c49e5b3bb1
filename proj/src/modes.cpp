#include "msst/modes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace msst {

namespace {

// Magnitudes |S_F(b, k)| in the same pixel-major layout as the stack.
class MagnitudeCube {
public:
    MagnitudeCube(Index h, Index w, std::size_t nb) : h_(h), w_(w), nb_(nb), v_(static_cast<std::size_t>(h * w) * nb) {}

    Index height() const { return h_; }
    Index width() const { return w_; }
    std::size_t bins() const { return nb_; }
    float& operator()(Index r, Index c, std::size_t p) { return v_[static_cast<std::size_t>(r * w_ + c) * nb_ + p]; }
    float operator()(Index r, Index c, std::size_t p) const {
        return v_[static_cast<std::size_t>(r * w_ + c) * nb_ + p];
    }
    std::vector<float>& raw() { return v_; }
    const std::vector<float>& raw() const { return v_; }

private:
    Index h_, w_;
    std::size_t nb_;
    std::vector<float> v_;
};

// 3x3 neighbourhood sum per bin, neighbourhood clipped at the border.
MagnitudeCube box3(const MagnitudeCube& m) {
    const Index h = m.height();
    const Index w = m.width();
    const std::size_t nb = m.bins();
    MagnitudeCube horizontal(h, w, nb);
    for (Index r = 0; r < h; ++r)
        for (Index c = 0; c < w; ++c)
            for (Index cc = std::max<Index>(c - 1, 0); cc <= std::min<Index>(c + 1, w - 1); ++cc)
                for (std::size_t p = 0; p < nb; ++p) horizontal(r, c, p) += m(r, cc, p);
    MagnitudeCube out(h, w, nb);
    for (Index r = 0; r < h; ++r)
        for (Index rr = std::max<Index>(r - 1, 0); rr <= std::min<Index>(r + 1, h - 1); ++rr)
            for (Index c = 0; c < w; ++c)
                for (std::size_t p = 0; p < nb; ++p) out(r, c, p) += horizontal(rr, c, p);
    return out;
}

std::size_t argmax_in(const MagnitudeCube& m, Index r, Index c, std::size_t lo, std::size_t hi) {
    std::size_t best = lo;
    for (std::size_t p = lo + 1; p <= hi; ++p)
        if (m(r, c, p) > m(r, c, best)) best = p;
    return best;
}

Plane<int> ridge_by_argmax(const MagnitudeCube& smooth) {
    Plane<int> bin(smooth.height(), smooth.width());
    for (Index r = 0; r < smooth.height(); ++r)
        for (Index c = 0; c < smooth.width(); ++c)
            bin(r, c) = static_cast<int>(argmax_in(smooth, r, c, 0, smooth.bins() - 1));
    return bin;
}

Plane<int> ridge_by_tracking(const MagnitudeCube& smooth, int search_bins) {
    const Index h = smooth.height();
    const Index w = smooth.width();
    const std::size_t nb = smooth.bins();
    const auto& raw = smooth.raw();
    const auto seed = static_cast<std::size_t>(std::max_element(raw.begin(), raw.end()) - raw.begin());

    Plane<int> bin = Plane<int>::Constant(h, w, -1);
    using Entry = std::tuple<float, Index, Index, int>;
    std::priority_queue<Entry> frontier;
    const auto seed_pixel = static_cast<Index>(seed / nb);
    frontier.emplace(raw[seed], seed_pixel / w, seed_pixel % w, static_cast<int>(seed % nb));
    static constexpr std::array<std::array<Index, 2>, 4> kSteps{{{-1, 0}, {1, 0}, {0, -1}, {0, 1}}};
    while (!frontier.empty()) {
        const auto [score, r, c, p] = frontier.top();
        frontier.pop();
        if (bin(r, c) >= 0) continue;
        bin(r, c) = p;
        for (const auto& step : kSteps) {
            const Index rr = r + step[0];
            const Index cc = c + step[1];
            if (rr < 0 || rr >= h || cc < 0 || cc >= w || bin(rr, cc) >= 0) continue;
            const auto lo = static_cast<std::size_t>(std::max(p - search_bins, 0));
            const auto hi = static_cast<std::size_t>(std::min(p + search_bins, static_cast<int>(nb) - 1));
            const std::size_t best = argmax_in(smooth, rr, cc, lo, hi);
            frontier.emplace(smooth(rr, cc, best), rr, cc, static_cast<int>(best));
        }
    }
    return bin;
}

Plane<double> median5(const Plane<double>& f) {
    const Index h = f.rows();
    const Index w = f.cols();
    Plane<double> out(h, w);
    std::array<double, 25> window{};
    for (Index r = 0; r < h; ++r) {
        for (Index c = 0; c < w; ++c) {
            std::size_t n = 0;
            for (Index rr = std::max<Index>(r - 2, 0); rr <= std::min<Index>(r + 2, h - 1); ++rr)
                for (Index cc = std::max<Index>(c - 2, 0); cc <= std::min<Index>(c + 2, w - 1); ++cc)
                    window[n++] = f(rr, cc);
            auto mid = window.begin() + static_cast<std::ptrdiff_t>(n / 2);
            std::nth_element(window.begin(), mid, window.begin() + static_cast<std::ptrdiff_t>(n));
            out(r, c) = *mid;
        }
    }
    return out;
}

std::pair<std::size_t, std::size_t> window_of(int centre, int half, std::size_t nb) {
    const auto lo = static_cast<std::size_t>(std::max(centre - half, 0));
    const auto hi = static_cast<std::size_t>(std::min(centre + half, static_cast<int>(nb) - 1));
    return {lo, hi};
}

}  // namespace

std::vector<RidgeSurface> extract_ridges(const SqueezeStack& sq, int n_modes, const RidgeOptions& options) {
    if (n_modes < 1) throw std::invalid_argument("n_modes must be at least 1");
    const Index h = sq.height;
    const Index w = sq.width;
    const std::size_t nb = sq.bins.size();

    MagnitudeCube magnitude(h, w, nb);
    double total_mass = 0.0;
    for (Index r = 0; r < h; ++r) {
        for (Index c = 0; c < w; ++c) {
            for (std::size_t p = 0; p < nb; ++p) {
                const double m = sq.at(r, c, p).norm();
                magnitude(r, c, p) = static_cast<float>(m);
                total_mass += m;
            }
        }
    }

    std::vector<RidgeSurface> ridges;
    for (int mode = 0; mode < n_modes; ++mode) {
        const MagnitudeCube smooth = box3(magnitude);
        const Plane<int> raw_bin = options.method == RidgeMethod::tracking
                                       ? ridge_by_tracking(smooth, options.search_bins)
                                       : ridge_by_argmax(smooth);

        Plane<double> log_k(h, w);
        for (Index r = 0; r < h; ++r)
            for (Index c = 0; c < w; ++c) log_k(r, c) = std::log(sq.bins.k_values[static_cast<std::size_t>(raw_bin(r, c))]);
        for (int pass = 0; pass < options.median_passes; ++pass) log_k = median5(log_k);

        RidgeSurface ridge;
        ridge.k_hat = log_k.exp();
        ridge.bin.resize(h, w);
        for (Index r = 0; r < h; ++r) {
            for (Index c = 0; c < w; ++c) {
                const int b = static_cast<int>(sq.bins.nearest(ridge.k_hat(r, c)));
                ridge.bin(r, c) = b;
                const auto [lo, hi] = window_of(b, options.peel_bins, nb);
                for (std::size_t p = lo; p <= hi; ++p) {
                    ridge.captured_energy += magnitude(r, c, p);
                    magnitude(r, c, p) = 0.0f;
                }
            }
        }
        ridges.push_back(std::move(ridge));
    }

    std::stable_sort(ridges.begin(), ridges.end(),
                     [](const RidgeSurface& a, const RidgeSurface& b) { return a.captured_energy > b.captured_energy; });
    for (auto& ridge : ridges)
        ridge.low_energy = total_mass <= 0.0 || ridge.captured_energy < options.low_energy_fraction * total_mass;
    return ridges;
}

ExtractedMode reconstruct_mode(const SqueezeStack& sq, const RidgeSurface& ridge, int kappa_bins,
                               const WaveletSpec& spec) {
    if (kappa_bins < 0) throw std::invalid_argument("kappa must be non-negative");
    if (ridge.bin.rows() != sq.height || ridge.bin.cols() != sq.width)
        throw std::invalid_argument("reconstruct_mode: ridge geometry does not match squeeze stack");
    const double norm = 2.0 * std::numbers::pi / tilde_c_psi(spec);
    ExtractedMode mode;
    mode.ridge = ridge;
    mode.clifford = Clifford(sq.height, sq.width, sq.dx);
    mode.amplitude = Field(sq.height, sq.width, sq.dx);
    mode.phase = Field(sq.height, sq.width, sq.dx);
    mode.orientation = Field(sq.height, sq.width, sq.dx);
    for (Index r = 0; r < sq.height; ++r) {
        for (Index c = 0; c < sq.width; ++c) {
            const auto [lo, hi] = window_of(ridge.bin(r, c), kappa_bins, sq.bins.size());
            CliffordVector<double> acc;
            for (std::size_t p = lo; p <= hi; ++p) acc += sq.at(r, c, p);
            acc *= norm;
            mode.clifford.set(r, c, acc);
            if (acc.norm() == 0.0) continue;
            const auto polar = polar_decompose(acc);
            mode.amplitude(r, c) = polar.amplitude;
            mode.phase(r, c) = polar.phase;
            mode.orientation(r, c) = polar.orientation;
        }
    }
    return mode;
}

namespace {

struct TrimWindow {
    Index row0, col0, rows, cols;
};

TrimWindow trim_window(Index h, Index w, double fraction) {
    if (!(fraction >= 0.0 && fraction < 0.5)) throw std::invalid_argument("trim fraction must lie in [0, 1/2)");
    const auto mr = static_cast<Index>(std::floor(static_cast<double>(h) * fraction));
    const auto mc = static_cast<Index>(std::floor(static_cast<double>(w) * fraction));
    const TrimWindow t{mr, mc, h - 2 * mr, w - 2 * mc};
    if (t.rows < 8 || t.cols < 8) throw std::invalid_argument("trimmed field smaller than 8x8");
    return t;
}

}  // namespace

Field trim_border(const Field& f, double fraction) {
    const auto t = trim_window(f.height(), f.width(), fraction);
    return Field(f.values.block(t.row0, t.col0, t.rows, t.cols), f.dx);
}

Clifford trim_border(const Clifford& f, double fraction) {
    const auto t = trim_window(f.height(), f.width(), fraction);
    Clifford out;
    out.re = f.re.block(t.row0, t.col0, t.rows, t.cols);
    out.ri = f.ri.block(t.row0, t.col0, t.rows, t.cols);
    out.rj = f.rj.block(t.row0, t.col0, t.rows, t.cols);
    out.dx = f.dx;
    return out;
}

double mse(const Field& estimate, const Field& reference) {
    if (estimate.height() != reference.height() || estimate.width() != reference.width())
        throw std::invalid_argument("mse: geometry mismatch");
    const double ref = std::sqrt(reference.values.square().sum());
    if (ref == 0.0) throw std::invalid_argument("mse: zero reference");
    return std::sqrt((estimate.values - reference.values).square().sum()) / ref;
}

std::vector<std::size_t> match_modes(const std::vector<Field>& estimates, const std::vector<Field>& references) {
    if (estimates.size() < references.size()) throw std::invalid_argument("match_modes: fewer estimates than references");
    std::vector<std::vector<double>> cost(references.size(), std::vector<double>(estimates.size()));
    for (std::size_t i = 0; i < references.size(); ++i)
        for (std::size_t j = 0; j < estimates.size(); ++j) cost[i][j] = mse(estimates[j], references[i]);

    std::vector<std::size_t> order(estimates.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> best;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < references.size(); ++i) total += cost[i][order[i]];
        if (total < best_cost) {
            best_cost = total;
            best.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(references.size()));
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

}  // namespace msst
