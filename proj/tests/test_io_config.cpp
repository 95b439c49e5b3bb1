#include "msst/config.hpp"
#include "msst/io.hpp"
#include "msst/pipeline.hpp"
#include "msst/synth.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

using namespace msst;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "msst_io_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string error_key(const std::function<void()>& action) {
    try {
        action();
    } catch (const FormatError& e) {
        return e.key();
    }
    return "";
}

}  // namespace

TEST_CASE("scalar and Clifford fields round-trip bitwise") {
    const Field f = test::random_field(7, 11, 0.125);
    write_field(scratch("scalar"), f);
    const Field g = read_scalar_field(scratch("scalar"));
    CHECK(g.dx == 0.125);
    CHECK(g.height() == 7);
    CHECK((g.values == f.values).all());

    Clifford c(5, 6, 0.5);
    c.re = test::random_field(5, 6).values;
    c.ri = test::random_field(5, 6).values;
    c.rj = test::random_field(5, 6).values;
    write_field(scratch("clifford"), c);
    const Clifford d = read_clifford_field(scratch("clifford"));
    CHECK((d.re == c.re).all());
    CHECK((d.ri == c.ri).all());
    CHECK((d.rj == c.rj).all());
    CHECK(error_key([] { read_scalar_field(scratch("clifford")); }) == "components");
}

TEST_CASE("scale stacks round-trip") {
    const Field f = test::random_field(16, 16, 1.0 / 16);
    const auto stack = monogenic_cwt(f, WaveletSpec{1.0, 3.0}, ScaleGrid{4, -12, -9});
    write_scale_stack(scratch("stack"), stack);
    const auto back = read_scale_stack(scratch("stack"));
    CHECK(back.spec.sigma == 3.0);
    CHECK(back.grid.j_min == -12);
    REQUIRE(back.levels.size() == 4);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(back.levels[j].scale == stack.levels[j].scale);
        CHECK((back.levels[j].coeff.ri == stack.levels[j].coeff.ri).all());
        CHECK((back.levels[j].db2.rj == stack.levels[j].db2.rj).all());
    }
}

TEST_CASE("squeeze stacks round-trip") {
    const WaveletSpec spec;
    const Field f = test_signal_3comp(GridSpec{32}).sum;
    const auto grid = default_scale_grid(spec, 32, 32, f.dx, 8);
    const auto run = squeeze_streaming(f, spec, grid, matched_bins(spec, grid), 1e-4);
    write_squeeze(scratch("squeeze"), run.squeeze);
    const auto back = read_squeeze(scratch("squeeze"));
    CHECK(back.gamma == run.squeeze.gamma);
    CHECK(back.bins.k_values == run.squeeze.bins.k_values);
    CHECK(back.kept_mass == run.squeeze.kept_mass);
    CHECK(back.dropped_mass == run.squeeze.dropped_mass);
    CHECK((back.kept_sum.re == run.squeeze.kept_sum.re).all());
    REQUIRE(back.data.size() == run.squeeze.data.size());
    bool identical = true;
    for (std::size_t i = 0; i < back.data.size(); ++i) identical = identical && back.data[i] == run.squeeze.data[i];
    CHECK(identical);
}

TEST_CASE("malformed field files name the offending key") {
    const fs::path stem = scratch("broken");
    write_field(stem, test::random_field(4, 4));
    {
        std::ofstream(stem.string() + ".json") << R"({"width": 4, "height": 4, "dx": 1.0, "components": 1, "order": "row-major"})";
    }
    CHECK(error_key([&] { read_raw(stem); }) == "dtype");
    {
        std::ofstream(stem.string() + ".json")
            << R"({"width": 5, "height": 4, "dx": 1.0, "components": 1, "dtype": "f64le", "order": "row-major"})";
    }
    CHECK(error_key([&] { read_raw(stem); }) == "components");
    {
        std::ofstream(stem.string() + ".json")
            << R"({"width": "four", "height": 4, "dx": 1.0, "components": 1, "dtype": "f64le", "order": "row-major"})";
    }
    CHECK(error_key([&] { read_raw(stem); }) == "width");
    { std::ofstream(stem.string() + ".json") << "{ not json"; }
    CHECK(error_key([&] { read_raw(stem); }) == "header");
    CHECK(error_key([] { read_raw(scratch("does_not_exist")); }) == "path");
}

TEST_CASE("PGM images") {
    Field ramp(3, 4, 1.0);
    for (Index r = 0; r < 3; ++r)
        for (Index c = 0; c < 4; ++c) ramp(r, c) = static_cast<double>(r * 4 + c);
    write_pgm(scratch("ramp.pgm"), ramp);
    const Field back = read_pgm(scratch("ramp.pgm"));
    CHECK(back.width() == 4);
    CHECK(back.height() == 3);
    CHECK(back.dx == 0.25);
    CHECK(back(0, 0) == 0.0);
    CHECK(back(2, 3) == 1.0);
    CHECK(back(1, 1) == doctest::Approx(std::lround(255.0 * 5 / 11) / 255.0));

    {
        std::ofstream out(scratch("wide.pgm"), std::ios::binary);
        out << "P5\n# sixteen bit\n2 1\n65535\n";
        out.put(static_cast<char>(0x80));
        out.put(0);
        out.put(static_cast<char>(0xff));
        out.put(static_cast<char>(0xff));
    }
    const Field wide = read_pgm(scratch("wide.pgm"));
    CHECK(wide(0, 0) == doctest::Approx(32768.0 / 65535.0));
    CHECK(wide(0, 1) == 1.0);

    { std::ofstream(scratch("ascii.pgm")) << "P2\n1 1\n255\n0\n"; }
    CHECK(error_key([] { read_pgm(scratch("ascii.pgm")); }) == "input");
}

TEST_CASE("configuration text round-trips") {
    RunConfig c;
    c.input = "in/signal";
    c.sigma = 4.0;
    c.gamma = 1.0 / 3.0;
    c.j_min = -300;
    c.k_max = 2000.5;
    c.directional = true;
    c.ridge = "argmax";
    const RunConfig back = parse_config(to_text(c));
    CHECK(to_text(back) == to_text(c));
    CHECK(back.gamma == c.gamma);
    CHECK(back.j_min == -300);
    CHECK(!back.j_max);
    CHECK(back.k_max == 2000.5);
    CHECK(back.ridge == "argmax");
    CHECK(back.ridge_options().method == RidgeMethod::neighborhood_argmax);

    const RunConfig partial = parse_config("# comment\nsigma = 8\n\nkappa=2\n", c);
    CHECK(partial.sigma == 8.0);
    CHECK(partial.kappa == 2);
    CHECK(partial.input == "in/signal");

    CHECK(error_key([] { parse_config("bogus = 1\n"); }) == "bogus");
    CHECK(error_key([] { parse_config("sigma = abc\n"); }) == "sigma");
    CHECK(error_key([] { parse_config("directional = maybe\n"); }) == "directional");
}

TEST_CASE("configuration validation names the offending key") {
    const auto key_for = [](auto mutate) {
        RunConfig c;
        mutate(c);
        return error_key([&] { validate(c); });
    };
    CHECK(key_for([](RunConfig&) {}) == "");
    CHECK(key_for([](RunConfig& c) { c.sigma = -1; }) == "sigma");
    CHECK(key_for([](RunConfig& c) { c.gamma = 0; }) == "gamma");
    CHECK(key_for([](RunConfig& c) { c.n_voices = 0; }) == "n_voices");
    CHECK(key_for([](RunConfig& c) { c.trim = 0.5; }) == "trim");
    CHECK(key_for([](RunConfig& c) { c.k_min = 10.0, c.k_max = 5.0; }) == "k_max");
    CHECK(key_for([](RunConfig& c) { c.ridge = "greedy"; }) == "ridge");
}

TEST_CASE("grid and bin resolution") {
    RunConfig c;
    const auto grid = resolve_grid(c, 512, 512, 1.0 / 512);
    CHECK(grid.size() == 226);
    CHECK(resolve_bins(c, grid).size() == 226);
    c.k_min = 100.0;
    c.k_max = 400.0;
    const auto bins = resolve_bins(c, grid);
    CHECK(bins.k_values.front() == 100.0);
    CHECK(bins.size() == 65);
    c.j_min = grid.j_min + 10;
    CHECK(resolve_grid(c, 512, 512, 1.0 / 512).size() == 216);
}
