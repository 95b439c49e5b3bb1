#ifndef MSST_SYNTH_HPP
#define MSST_SYNTH_HPP

// Generators on the unit square sampled N x N with dx = 1 / N.
// x = col * dx (horizontal), y = row * dx (vertical).

#include "msst/field.hpp"

#include <array>
#include <utility>

namespace msst {

struct GridSpec {
    Index n = 512;
    double dx() const { return 1.0 / static_cast<double>(n); }
};

using Wavevector = std::array<double, 2>;

// a0 cos(k . x + alpha)
Field plane_wave(const GridSpec& grid, double a0, const Wavevector& k, double alpha = 0.0);

struct TestSignal {
    Field sum;
    std::array<Field, 3> components;
};

// f1 = exp(-10((x-.5)^2 + (y-.5)^2)) sin(10 pi (x^2 + y^2 + 2(x + 0.2 y)))
// f2 = 1.2 sin(40 pi (x + y))
// f3 = cos(2 pi (70x + 20x^2 + 50y - 20y^2 - 41xy))
TestSignal test_signal_3comp(const GridSpec& grid);

struct GradientField {
    Field d1;
    Field d2;
    Plane<double> magnitude() const { return (d1.values.square() + d2.values.square()).sqrt(); }
};

// Phase gradients of the three test-signal components.
std::array<GradientField, 3> analytic_gradients(const GridSpec& grid);

// (image + a0 cos(k . x), a0 cos(k . x)) on the image's own grid.
std::pair<Field, Field> compose_with_pattern(const Field& image, double a0, const Wavevector& k);

}  // namespace msst

#endif  // MSST_SYNTH_HPP
