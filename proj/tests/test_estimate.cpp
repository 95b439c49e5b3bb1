#include "msst/estimate.hpp"
#include "msst/synth.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace msst;
using Q = Quaternion<double>;

constexpr double kPi = std::numbers::pi;

namespace {

ScaleCoefficients plane_wave_level(double k1, double k2, double a0, double factor, Index n = 64) {
    const Field f = plane_wave(GridSpec{n}, a0, {k1, k2});
    const WaveletSpec spec;
    return MonogenicCwt(f, spec).at(factor * spec.mu / std::hypot(k1, k2));
}

}  // namespace

TEST_CASE("lambda fields of plane waves") {
    const int waves[][2] = {{3, 1}, {5, -4}, {2, 7}, {6, 0}, {4, -9}};
    for (const auto& m : waves) {
        const double k1 = 2 * kPi * m[0];
        const double k2 = 2 * kPi * m[1];
        const double kn = std::hypot(k1, k2);
        const double theta0 = std::atan2(k2, k1);
        const Q n_theta{0, std::cos(theta0), std::sin(theta0), 0};
        const auto level = plane_wave_level(k1, k2, 1.1, 0.95);
        const auto est = estimate_scale(level, 1e-6, true);
        REQUIRE(est.valid.all());
        for (Index r = 0; r < 64; r += 5)
            for (Index c = 0; c < 64; c += 3) {
                CHECK(norm(est.lambda1->at(r, c) - k1 * n_theta) <= 1e-6 * kn);
                CHECK(norm(est.lambda2->at(r, c) - k2 * n_theta) <= 1e-6 * kn);
                CHECK(est.omega1(r, c) == doctest::Approx(std::abs(k1)).epsilon(1e-9));
                CHECK(est.omega2(r, c) == doctest::Approx(m[0] >= 0 ? k2 : -k2).epsilon(1e-9));
                CHECK(est.k_iso(r, c) == doctest::Approx(kn).epsilon(1e-9));
            }
    }
}

TEST_CASE("sign recovery") {
    const double k1 = 2 * kPi * 5;
    auto negative = estimate_scale(plane_wave_level(k1, -2 * kPi * 3, 1.0, 1.0), 1e-6);
    auto positive = estimate_scale(plane_wave_level(k1, 2 * kPi * 3, 1.0, 1.0), 1e-6);
    auto flat = estimate_scale(plane_wave_level(k1, 0.0, 1.0, 1.0), 1e-6);
    CHECK((negative.omega2 < 0).all());
    CHECK((positive.omega2 > 0).all());
    CHECK(flat.omega2.abs().maxCoeff() <= 1e-6 * k1);
    CHECK((negative.theta < 0).all());
}

TEST_CASE("zero field has no valid entries") {
    const WaveletSpec spec;
    const auto level = MonogenicCwt(Field(32, 32, 1.0 / 32), spec).at(0.01);
    const auto est = estimate_scale(level, 1e-300);
    CHECK(!est.valid.any());
    CHECK(est.k_iso.abs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(estimate_scale(level, 0.0), std::invalid_argument);
}

TEST_CASE("estimates are invariant to scaling the image") {
    const Field f = test::random_field(32, 32, 1.0 / 32);
    const WaveletSpec spec;
    const double a = spec.mu / (2 * kPi * 5);
    for (double c : {3.0, -0.25}) {
        const Field g(c * f.values, f.dx);
        const auto ef = estimate_scale(MonogenicCwt(f, spec).at(a), 1e-3, true);
        const auto eg = estimate_scale(MonogenicCwt(g, spec).at(a), 1e-3 * std::abs(c), true);
        CHECK((ef.valid == eg.valid).all());
        CHECK((ef.k_iso - eg.k_iso).abs().maxCoeff() <= 1e-9 * ef.k_iso.maxCoeff());
        CHECK((ef.omega2 - eg.omega2).abs().maxCoeff() <= 1e-9 * ef.k_iso.maxCoeff());
        CHECK((ef.theta - eg.theta).abs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("k_iso equals the quaternion norm of the lambda pair") {
    const Field f = test::random_field(32, 32, 1.0 / 32);
    const WaveletSpec spec;
    const auto est = estimate_scale(MonogenicCwt(f, spec).at(0.03), 1e-4, true);
    for (Index r = 0; r < 32; ++r)
        for (Index c = 0; c < 32; ++c) {
            if (!est.valid(r, c)) continue;
            const double expected = std::sqrt(est.lambda1->at(r, c).squared_norm() + est.lambda2->at(r, c).squared_norm());
            CHECK(std::abs(est.k_iso(r, c) - expected) <= 1e-12 * expected);
            CHECK(est.omega1(r, c) >= 0.0);
        }
}

TEST_CASE("staged estimate agrees with the fused one") {
    const Field f = test::random_field(32, 32, 1.0 / 32);
    const WaveletSpec spec;
    const auto stack = monogenic_cwt(f, spec, ScaleGrid{8, -40, -30});
    const double gamma = relative_gamma(stack);
    const auto staged = signed_frequencies(lambda_fields(stack, gamma), stack);
    for (std::size_t j = 0; j < stack.levels.size(); ++j) {
        const auto fused = estimate_scale(stack.levels[j], gamma);
        CHECK((fused.valid == staged.scales[j].valid).all());
        CHECK((fused.omega2 == staged.scales[j].omega2).all());
        CHECK((fused.theta == staged.scales[j].theta).all());
    }
    std::ostringstream csv;
    write_estimate_csv(csv, staged, stack);
    CHECK(csv.str().rfind("b1,b2,a,k_iso,theta,abs_cF\n", 0) == 0);
}

TEST_CASE("second test component gives its constant frequency at ridge scales") {
    const GridSpec grid{256};
    const Field f2 = test_signal_3comp(grid).components[1];
    const WaveletSpec spec;
    const double k = 40 * kPi * std::sqrt(2.0);
    const MonogenicCwt cwt(f2, spec);
    for (double factor : {0.95, 1.0, 1.05}) {
        const auto est = estimate_scale(cwt.at(factor * spec.mu / k), 1e-6);
        for (Index r = 32; r < 224; r += 11)
            for (Index c = 32; c < 224; c += 13) CHECK(est.k_iso(r, c) == doctest::Approx(k).epsilon(0.02));
    }
    CHECK(k == doctest::Approx(177.72).epsilon(1e-4));
}
