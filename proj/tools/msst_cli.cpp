#include "msst/config.hpp"
#include "msst/io.hpp"
#include "msst/modes.hpp"
#include "msst/pipeline.hpp"
#include "msst/synth.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace msst;

namespace {

// Command-line values; each one set on the command line overrides the config file.
struct Overrides {
    std::string config;
    std::optional<std::string> input, output, reference, ridge;
    std::optional<Index> n;
    std::optional<double> mu, sigma, gamma, k_min, k_max, trim, y;
    std::optional<int> n_voices, j_min, j_max, n_modes, kappa, orientations;
    bool directional = false;

    RunConfig resolve() const {
        RunConfig c = config.empty() ? RunConfig{} : load_config(config);
        if (input) c.input = *input;
        if (output) c.output = *output;
        if (reference) c.reference = *reference;
        if (ridge) c.ridge = *ridge;
        if (n) c.n = *n;
        if (mu) c.mu = *mu;
        if (sigma) c.sigma = *sigma;
        if (gamma) c.gamma = *gamma;
        if (k_min) c.k_min = *k_min;
        if (k_max) c.k_max = *k_max;
        if (trim) c.trim = *trim;
        if (y) c.slice_y = *y;
        if (n_voices) c.n_voices = *n_voices;
        if (j_min) c.j_min = *j_min;
        if (j_max) c.j_max = *j_max;
        if (n_modes) c.n_modes = *n_modes;
        if (kappa) c.kappa = *kappa;
        if (orientations) c.orientations = *orientations;
        if (directional) c.directional = true;
        validate(c);
        return c;
    }
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "key = value config file");
    cmd->add_option("--input", o.input, "input field stem, .pgm image, stack or squeeze stem");
    cmd->add_option("--out", o.output, "output directory");
    cmd->add_option("--reference", o.reference, "comma-separated reference field stems");
    cmd->add_option("--n", o.n, "grid size for synth");
    cmd->add_option("--mu", o.mu, "Morlet centre frequency");
    cmd->add_option("--sigma", o.sigma, "Morlet bandwidth");
    cmd->add_option("--nv", o.n_voices, "voices per octave");
    cmd->add_option("--jmin", o.j_min, "smallest scale exponent");
    cmd->add_option("--jmax", o.j_max, "largest scale exponent");
    cmd->add_option("--gamma", o.gamma, "threshold relative to max |c_F|");
    cmd->add_option("--kmin", o.k_min, "lowest frequency bin");
    cmd->add_option("--kmax", o.k_max, "highest frequency bin");
    cmd->add_option("--modes", o.n_modes, "number of modes to extract");
    cmd->add_option("--kappa", o.kappa, "reconstruction half-window in bins");
    cmd->add_option("--trim", o.trim, "border fraction removed before evaluation");
    cmd->add_option("--orientations", o.orientations, "orientation count for --directional");
    cmd->add_option("--ridge", o.ridge, "ridge method: tracking or argmax");
    cmd->add_option("--y", o.y, "slice position in [0, 1)");
    cmd->add_flag("--directional", o.directional, "also run the directional squeeze");
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

Field load_image(const std::string& path) {
    if (path.empty()) throw FormatError("input", "--input is required");
    if (fs::path(path).extension() == ".pgm") return read_pgm(path);
    Field f = read_scalar_field(path);
    validate_field(f);
    return f;
}

enum class InputKind { field, stack, squeeze, pgm };

InputKind classify(const std::string& path) {
    if (path.empty()) throw FormatError("input", "--input is required");
    if (fs::path(path).extension() == ".pgm") return InputKind::pgm;
    const auto raw_header = [&] {
        std::ifstream in(path + ".json");
        if (!in) throw FormatError("input", "cannot open " + path + ".json");
        try {
            return json::parse(in);
        } catch (const json::parse_error&) {
            throw FormatError("header", "corrupt header " + path + ".json");
        }
    }();
    if (raw_header.contains("scales")) return InputKind::stack;
    if (raw_header.contains("k_values")) return InputKind::squeeze;
    return InputKind::field;
}

json base_report(const RunConfig& c) {
    json r;
    r["config"] = to_json(c);
    r["c_psi"] = c_psi(c.wavelet());
    r["tilde_c_psi"] = tilde_c_psi(c.wavelet());
    return r;
}

void emit(const RunConfig& c, const json& report) {
    fs::create_directories(c.output);
    std::ofstream(fs::path(c.output) / "report.json") << report.dump(2) << '\n';
    std::ofstream(fs::path(c.output) / "config.txt") << to_text(c);
    std::cout << report.dump(2) << '\n';
}

SqueezeRun squeeze_input(const RunConfig& c) {
    const auto kind = classify(c.input);
    if (kind == InputKind::squeeze) {
        SqueezeRun run;
        run.squeeze = read_squeeze(c.input);
        run.gamma = run.squeeze.gamma;
        return run;
    }
    if (kind == InputKind::stack) {
        const ScaleStack stack = read_scale_stack(c.input);
        return squeeze_stack(stack, resolve_bins(c, stack.grid), c.gamma);
    }
    const Field f = load_image(c.input);
    const ScaleGrid grid = resolve_grid(c, f.height(), f.width(), f.dx);
    return squeeze_streaming(f, c.wavelet(), grid, resolve_bins(c, grid), c.gamma);
}

void add_squeeze_diagnostics(json& report, const SqueezeRun& run) {
    report["gamma"] = run.gamma;
    report["bins"] = run.squeeze.bins.size();
    report["dropped_mass_fraction"] = run.squeeze.dropped_mass_fraction();
    report["warnings"] = run.warnings;
}

json evaluate(const RunConfig& c, const std::vector<Field>& estimates) {
    json out = json::array();
    const auto stems = split(c.reference);
    if (stems.empty()) return out;
    std::vector<Field> refs, trimmed;
    for (const auto& s : stems) refs.push_back(trim_border(read_scalar_field(s), c.trim));
    for (const auto& e : estimates) trimmed.push_back(trim_border(e, c.trim));
    if (trimmed.size() < refs.size()) throw FormatError("reference", "more references than estimates");
    const auto match = match_modes(trimmed, refs);
    for (std::size_t i = 0; i < refs.size(); ++i)
        out.push_back({{"reference", stems[i]}, {"mode", match[i]}, {"mse", mse(trimmed[match[i]], refs[i])}});
    return out;
}

int cmd_synth(const RunConfig& c) {
    const GridSpec grid{c.n};
    const TestSignal s = test_signal_3comp(grid);
    const fs::path out(c.output);
    write_field(out / "signal", s.sum);
    for (std::size_t l = 0; l < 3; ++l) write_field(out / ("f" + std::to_string(l + 1)), s.components[l]);
    json report = base_report(c);
    report["files"] = {"signal", "f1", "f2", "f3"};
    emit(c, report);
    return 0;
}

int cmd_transform(const RunConfig& c) {
    const Field f = load_image(c.input);
    const ScaleGrid grid = resolve_grid(c, f.height(), f.width(), f.dx);
    const ScaleStack stack = monogenic_cwt(f, c.wavelet(), grid);
    write_scale_stack(fs::path(c.output) / "stack", stack);
    json report = base_report(c);
    report["scales"] = grid.size();
    report["j_min"] = grid.j_min;
    report["j_max"] = grid.j_max;
    report["warnings"] = stack.warnings;
    emit(c, report);
    return 0;
}

int cmd_squeeze(const RunConfig& c) {
    const SqueezeRun run = squeeze_input(c);
    write_squeeze(fs::path(c.output) / "squeeze", run.squeeze);
    json report = base_report(c);
    add_squeeze_diagnostics(report, run);
    if (c.directional) {
        const Field f = load_image(c.input);
        const ScaleGrid grid = resolve_grid(c, f.height(), f.width(), f.dx);
        const ScaleStack stack = monogenic_cwt(f, c.wavelet(), grid);
        const FrequencyEstimate est = signed_frequencies(lambda_fields(stack, run.gamma), stack);
        const double k_hi = std::numbers::pi / f.dx;
        // Largest per-axis bin count that keeps the directional stack within its entry budget.
        const double pixels = static_cast<double>(f.height() * f.width()) * c.orientations;
        const auto fit = static_cast<std::size_t>(std::floor(std::sqrt(5e7 / pixels)));
        const std::size_t count = std::max<std::size_t>(1, std::min<std::size_t>(2 * c.n_voices, fit));
        std::vector<double> orientations;
        for (int o = 0; o < c.orientations; ++o) orientations.push_back(std::numbers::pi * o / c.orientations);
        const auto dir = msst_directional(stack, est, linear_bins(-k_hi, k_hi, count), linear_bins(-k_hi, k_hi, count),
                                          orientations);
        for (std::size_t o = 0; o < orientations.size(); ++o)
            write_field(fs::path(c.output) / ("directional_" + std::to_string(o)), dir.orientation_total(o));
        report["directional"] = {{"orientations", orientations},
                                 {"bins_per_axis", count},
                                 {"kept_mass", dir.kept_mass},
                                 {"dropped_mass", dir.dropped_mass}};
    }
    emit(c, report);
    return 0;
}

int cmd_extract(const RunConfig& c) {
    const SqueezeRun run = squeeze_input(c);
    const auto ridges = extract_ridges(run.squeeze, c.n_modes, c.ridge_options());
    json report = base_report(c);
    add_squeeze_diagnostics(report, run);
    double total = 0.0;
    for (const auto& r : ridges) total += r.captured_energy;
    std::vector<Field> scalars;
    json modes = json::array();
    const fs::path out(c.output);
    for (std::size_t l = 0; l < ridges.size(); ++l) {
        const ExtractedMode m = reconstruct_mode(run.squeeze, ridges[l], c.kappa, c.wavelet());
        const std::string stem = "mode" + std::to_string(l + 1);
        write_field(out / (stem + "_clifford"), m.clifford);
        write_field(out / (stem + "_scalar"), m.clifford.scalar_part());
        write_field(out / (stem + "_amplitude"), m.amplitude);
        write_field(out / (stem + "_phase"), m.phase);
        write_field(out / (stem + "_orientation"), m.orientation);
        write_field(out / (stem + "_ridge"), Field(m.ridge.k_hat, run.squeeze.dx));
        modes.push_back({{"mode", l},
                         {"captured_energy", ridges[l].captured_energy},
                         {"energy_fraction", total > 0.0 ? ridges[l].captured_energy / total : 0.0},
                         {"low_energy", ridges[l].low_energy}});
        scalars.push_back(m.clifford.scalar_part());
    }
    report["modes"] = modes;
    report["mse"] = evaluate(c, scalars);
    emit(c, report);
    return 0;
}

int cmd_eval(const RunConfig& c) {
    std::vector<Field> estimates;
    for (const auto& s : split(c.input)) estimates.push_back(read_scalar_field(s));
    if (estimates.empty()) throw FormatError("input", "--input must list estimate field stems");
    if (split(c.reference).empty()) throw FormatError("reference", "--reference is required for eval");
    json report = base_report(c);
    report["mse"] = evaluate(c, estimates);
    emit(c, report);
    return 0;
}

int cmd_slice(const RunConfig& c) {
    const SqueezeRun run = squeeze_input(c);
    const auto row = static_cast<Index>(std::floor(c.slice_y * static_cast<double>(run.squeeze.height)));
    fs::create_directories(c.output);
    std::ofstream csv(fs::path(c.output) / "slice.csv");
    write_slice_csv(csv, run.squeeze, row);
    json report = base_report(c);
    add_squeeze_diagnostics(report, run);
    report["row"] = row;
    emit(c, report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monogenic synchrosqueezing of 2D images"};
    app.require_subcommand(1);
    Overrides o;
    std::vector<std::pair<CLI::App*, int (*)(const RunConfig&)>> commands = {
        {app.add_subcommand("synth", "write the three-component test signal and its components"), cmd_synth},
        {app.add_subcommand("transform", "monogenic wavelet transform of a field"), cmd_transform},
        {app.add_subcommand("squeeze", "isotropic synchrosqueezing"), cmd_squeeze},
        {app.add_subcommand("extract", "ridge extraction, mode reconstruction and demodulation"), cmd_extract},
        {app.add_subcommand("eval", "trimmed normalized MSE against references"), cmd_eval},
        {app.add_subcommand("slice", "CSV of |S_F| along one image row"), cmd_slice},
    };
    for (auto& [cmd, fn] : commands) add_common(cmd, o);
    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig config = o.resolve();
        for (auto& [cmd, fn] : commands)
            if (cmd->parsed()) return fn(config);
    } catch (const FormatError& e) {
        std::cerr << json{{"error", e.what()}, {"key", e.key()}}.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << '\n';
        return 1;
    }
    return 1;
}
