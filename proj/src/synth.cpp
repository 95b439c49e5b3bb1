#include "msst/synth.hpp"

#include <cmath>
#include <numbers>

namespace msst {

namespace {

constexpr double kPi = std::numbers::pi;

template <typename Fn>
Field sample(Index h, Index w, double dx, Fn&& fn) {
    Field out(h, w, dx);
    for (Index r = 0; r < h; ++r)
        for (Index c = 0; c < w; ++c) out(r, c) = fn(static_cast<double>(c) * dx, static_cast<double>(r) * dx);
    return out;
}

}  // namespace

Field plane_wave(const GridSpec& grid, double a0, const Wavevector& k, double alpha) {
    return sample(grid.n, grid.n, grid.dx(),
                  [&](double x, double y) { return a0 * std::cos(k[0] * x + k[1] * y + alpha); });
}

TestSignal test_signal_3comp(const GridSpec& grid) {
    const Index n = grid.n;
    const double dx = grid.dx();
    TestSignal s;
    s.components[0] = sample(n, n, dx, [](double x, double y) {
        const double envelope = std::exp(-10.0 * ((x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5)));
        return envelope * std::sin(10.0 * kPi * (x * x + y * y + 2.0 * (x + 0.2 * y)));
    });
    s.components[1] = sample(n, n, dx, [](double x, double y) { return 1.2 * std::sin(40.0 * kPi * (x + y)); });
    s.components[2] = sample(n, n, dx, [](double x, double y) {
        return std::cos(2.0 * kPi * (70.0 * x + 20.0 * x * x + 50.0 * y - 20.0 * y * y - 41.0 * x * y));
    });
    s.sum = Field(s.components[0].values + s.components[1].values + s.components[2].values, dx);
    return s;
}

std::array<GradientField, 3> analytic_gradients(const GridSpec& grid) {
    const Index n = grid.n;
    const double dx = grid.dx();
    std::array<GradientField, 3> g;
    g[0].d1 = sample(n, n, dx, [](double x, double) { return 10.0 * kPi * (2.0 * x + 2.0); });
    g[0].d2 = sample(n, n, dx, [](double, double y) { return 10.0 * kPi * (2.0 * y + 0.4); });
    g[1].d1 = sample(n, n, dx, [](double, double) { return 40.0 * kPi; });
    g[1].d2 = sample(n, n, dx, [](double, double) { return 40.0 * kPi; });
    g[2].d1 = sample(n, n, dx, [](double x, double y) { return 2.0 * kPi * (70.0 + 40.0 * x - 41.0 * y); });
    g[2].d2 = sample(n, n, dx, [](double x, double y) { return 2.0 * kPi * (50.0 - 40.0 * y - 41.0 * x); });
    return g;
}

std::pair<Field, Field> compose_with_pattern(const Field& image, double a0, const Wavevector& k) {
    Field pattern = sample(image.height(), image.width(), image.dx,
                           [&](double x, double y) { return a0 * std::cos(k[0] * x + k[1] * y); });
    Field sum(image.values + pattern.values, image.dx);
    return {std::move(sum), std::move(pattern)};
}

}  // namespace msst
