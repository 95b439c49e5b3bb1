#include "msst/pipeline.hpp"
#include "msst/squeeze.hpp"
#include "msst/synth.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace msst;

constexpr double kPi = std::numbers::pi;

TEST_CASE("log bins tile the range") {
    const auto bins = log_bins(10.0, 80.0, 4);
    CHECK(bins.size() == 13);
    CHECK(bins.k_values.front() == 10.0);
    CHECK(bins.k_values.back() == doctest::Approx(80.0).epsilon(1e-14));
    for (std::size_t p = 0; p < bins.size(); ++p) {
        CHECK(bins.locate(bins.k_values[p]) == p);
        CHECK(bins.delta_k(p) > 0.0);
        if (p > 0) CHECK(bins.edges[p] == doctest::Approx(std::sqrt(bins.k_values[p - 1] * bins.k_values[p])));
    }
    CHECK(!bins.locate(5.0));
    CHECK(!bins.locate(200.0));
    CHECK(bins.nearest(5.0) == 0);
    CHECK(bins.nearest(200.0) == bins.size() - 1);
    CHECK_THROWS_AS(log_bins(0.0, 1.0, 4), std::invalid_argument);
}

TEST_CASE("matched bins mirror the scale grid") {
    const WaveletSpec spec;
    const ScaleGrid grid{32, -300, -100};
    const auto bins = matched_bins(spec, grid);
    REQUIRE(bins.size() == grid.size());
    CHECK(bins.k_values.front() == doctest::Approx(spec.mu / grid.scale(grid.size() - 1)));
    CHECK(bins.k_values.back() == doctest::Approx(spec.mu / grid.scale(0)));
    const auto linear = linear_bins(-4.0, 4.0, 8);
    CHECK(linear.locate(-3.9) == 0);
    CHECK(linear.locate(0.1) == 4);
}

TEST_CASE("plane wave squeezes into the bin of its frequency") {
    const Index n = 64;
    const WaveletSpec spec;
    const Field f = plane_wave(GridSpec{n}, 1.0, {2 * kPi * 6, 2 * kPi * 3});
    const auto grid = default_scale_grid(spec, n, n, 1.0 / n, 16);
    const auto bins = matched_bins(spec, grid);
    const auto run = squeeze_streaming(f, spec, grid, bins, 1e-4);
    const double k = 2 * kPi * std::hypot(6.0, 3.0);
    const std::size_t home = *bins.locate(k);
    double inside = 0.0, outside = 0.0;
    for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c)
            for (std::size_t p = 0; p < bins.size(); ++p)
                (p == home ? inside : outside) += run.squeeze.at(r, c, p).norm();
    CHECK(outside <= 1e-9 * inside);
}

TEST_CASE("zero field squeezes to zero") {
    const WaveletSpec spec;
    const Field f(32, 32, 1.0 / 32);
    const auto grid = default_scale_grid(spec, 32, 32, f.dx, 8);
    const auto run = squeeze_streaming(f, spec, grid, matched_bins(spec, grid), 1e-4);
    CHECK(run.squeeze.total().modulus().maxCoeff() == 0.0);
    CHECK(run.squeeze.dropped_mass_fraction() == 0.0);
    CHECK(reconstruct_from_squeeze(run.squeeze, spec).modulus().maxCoeff() == 0.0);
}

TEST_CASE("squeezing conserves the kept mass and is reproducible") {
    const Index n = 64;
    const WaveletSpec spec;
    const Field f = test_signal_3comp(GridSpec{n}).sum;
    const auto grid = default_scale_grid(spec, n, n, f.dx, 16);
    const auto bins = log_bins(2 * kPi * 8, 2 * kPi * 20, 16);
    const auto a = squeeze_streaming(f, spec, grid, bins, 1e-4);
    const auto b = squeeze_streaming(f, spec, grid, bins, 1e-4);
    CHECK(a.squeeze.dropped_mass_fraction() > 0.0);
    const Clifford total = a.squeeze.total();
    const double scale = a.squeeze.kept_sum.modulus().maxCoeff();
    CHECK((total.re - a.squeeze.kept_sum.re).abs().maxCoeff() <= 1e-12 * scale);
    CHECK((total.ri - a.squeeze.kept_sum.ri).abs().maxCoeff() <= 1e-12 * scale);
    CHECK((total.rj - a.squeeze.kept_sum.rj).abs().maxCoeff() <= 1e-12 * scale);
    bool identical = a.squeeze.data.size() == b.squeeze.data.size();
    for (std::size_t i = 0; identical && i < a.squeeze.data.size(); ++i) identical = a.squeeze.data[i] == b.squeeze.data[i];
    CHECK(identical);
}

TEST_CASE("streaming and stored-stack squeezes agree") {
    const Index n = 32;
    const WaveletSpec spec;
    const Field f = test::random_field(n, n, 1.0 / n);
    const auto grid = default_scale_grid(spec, n, n, f.dx, 8);
    const auto bins = matched_bins(spec, grid);
    const auto streamed = squeeze_streaming(f, spec, grid, bins, 1e-3);
    const auto stack = monogenic_cwt(f, spec, grid);
    const auto stored = squeeze_stack(stack, bins, 1e-3);
    const auto staged = msst_isotropic(stack, signed_frequencies(lambda_fields(stack, stored.gamma), stack), bins);
    CHECK(streamed.gamma == stored.gamma);
    for (std::size_t i = 0; i < streamed.squeeze.data.size(); ++i) {
        CHECK(streamed.squeeze.data[i] == stored.squeeze.data[i]);
        CHECK(staged.data[i] == stored.squeeze.data[i]);
    }
}

TEST_CASE("scaling the image scales the squeeze") {
    const Index n = 32;
    const WaveletSpec spec;
    const Field f = test::random_field(n, n, 1.0 / n);
    const Field g(-2.5 * f.values, f.dx);
    const auto grid = default_scale_grid(spec, n, n, f.dx, 8);
    const auto bins = matched_bins(spec, grid);
    const auto sf = squeeze_streaming(f, spec, grid, bins, 1e-3);
    const auto sg = squeeze_streaming(g, spec, grid, bins, 1e-3);
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < sf.squeeze.data.size(); ++i) {
        auto expected = sf.squeeze.data[i];
        expected *= -2.5;
        const auto d = Quaternion<double>(sg.squeeze.data[i]) - Quaternion<double>(expected);
        worst = std::max(worst, norm(d));
        peak = std::max(peak, expected.norm());
    }
    CHECK(worst <= 1e-9 * peak);
}

TEST_CASE("full-bin reconstruction recovers a tone and matches the pointwise formula") {
    const Index n = 128;
    const WaveletSpec spec;
    const Field tone = plane_wave(GridSpec{n}, 0.9, {2 * kPi * 9, -2 * kPi * 5}, 0.3);
    const auto grid = default_scale_grid(spec, n, n, tone.dx);
    const auto stack = monogenic_cwt(tone, spec, grid);
    const auto run = squeeze_stack(stack, log_bins(1e-3, 1e6, 32), 1e-4);
    const Clifford rec = reconstruct_from_squeeze(run.squeeze, spec);
    CHECK(test::rel_l2(rec.re, tone.values) <= 3e-2);
    CHECK(run.squeeze.dropped_mass_fraction() == 0.0);

    // Pointwise formula restricted to coefficients above the threshold.
    Plane<double> thresholded = Plane<double>::Zero(n, n);
    for (const auto& level : stack.levels) {
        const Plane<double> kept = (level.coeff.modulus() > run.gamma).select(level.coeff.re, 0.0);
        thresholded += (std::log(2.0) / grid.n_voices / level.scale) * kept;
    }
    thresholded *= 2 * kPi / tilde_c_psi(spec);
    CHECK((rec.re - thresholded).abs().maxCoeff() <= 1e-12 * thresholded.abs().maxCoeff());
}

TEST_CASE("second test component reconstructs from the full squeeze") {
    const Index n = 256;
    const WaveletSpec spec;
    const Field f2 = test_signal_3comp(GridSpec{n}).components[1];
    const auto grid = default_scale_grid(spec, n, n, f2.dx);
    const auto run = squeeze_streaming(f2, spec, grid, matched_bins(spec, grid), 1e-4);
    const Clifford rec = reconstruct_from_squeeze(run.squeeze, spec);
    const Index m = n / 8;
    const Plane<double> inner_rec = rec.re.block(m, m, n - 2 * m, n - 2 * m);
    const Plane<double> inner_ref = f2.values.block(m, m, n - 2 * m, n - 2 * m);
    CHECK(test::rel_l2(inner_rec, inner_ref) <= 5e-2);
}

TEST_CASE("directional squeeze") {
    const Index n = 32;
    const WaveletSpec spec;
    const double k1 = 2 * kPi * 4, k2 = 2 * kPi * 4;
    const Field f = plane_wave(GridSpec{n}, 1.0, {k1, k2});
    const auto grid = default_scale_grid(spec, n, n, f.dx, 8);
    const auto stack = monogenic_cwt(f, spec, grid);
    const auto est = signed_frequencies(lambda_fields(stack, relative_gamma(stack)), stack);
    const std::vector<double> orientations{0.0, kPi / 4, kPi / 2};
    const auto b1 = linear_bins(-kPi * n, kPi * n, 15);
    const auto b2 = linear_bins(-kPi * n, kPi * n, 15);
    const auto dir = msst_directional(stack, est, b1, b2, orientations);

    // At theta0 = pi/4 all mass sits at the (k1, k2) cell.
    const std::size_t p1 = *b1.locate(k1), p2 = *b2.locate(k2);
    double home = 0.0, total = 0.0;
    for (std::size_t q1 = 0; q1 < b1.size(); ++q1)
        for (std::size_t q2 = 0; q2 < b2.size(); ++q2)
            for (Index r = 0; r < n; ++r)
                for (Index c = 0; c < n; ++c) {
                    const double m = dir.at(1, q1, q2, r, c).norm();
                    total += m;
                    if (q1 == p1 && q2 == p2) home += m;
                }
    CHECK(home >= (1.0 - 1e-9) * total);

    // Each orientation partitions the same kept coefficients.
    const auto iso = squeeze_stack(stack, linear_bins(0.0, 2 * kPi * n, 16), 1e-4);
    const Clifford t1 = dir.orientation_total(1);
    CHECK((t1.re - iso.squeeze.total().re).abs().maxCoeff() <= 1e-12 * t1.re.abs().maxCoeff());

    CHECK_THROWS_AS(msst_directional(stack, est, b1, b2, orientations, 1000), std::length_error);
    const auto zero_stack = monogenic_cwt(Field(n, n, f.dx), spec, grid);
    const auto zero_est = lambda_fields(zero_stack, 1e-300);
    const auto zero = msst_directional(zero_stack, zero_est, b1, b2, orientations);
    CHECK(zero.kept_mass == 0.0);
}

TEST_CASE("slice export") {
    const WaveletSpec spec;
    const Field f = plane_wave(GridSpec{16}, 1.0, {2 * kPi * 3, 0.0});
    const auto grid = default_scale_grid(spec, 16, 16, f.dx, 4);
    const auto run = squeeze_streaming(f, spec, grid, matched_bins(spec, grid), 1e-4);
    std::ostringstream csv;
    write_slice_csv(csv, run.squeeze, 8);
    std::size_t lines = 0;
    for (char ch : csv.str()) lines += ch == '\n';
    CHECK(lines == 1 + 16 * run.squeeze.bins.size());
    CHECK_THROWS_AS(write_slice_csv(csv, run.squeeze, 16), std::out_of_range);
}
