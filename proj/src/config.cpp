#include "msst/config.hpp"

#include "msst/io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace msst {

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || end != text.data() + text.size())
        throw FormatError(key, "cannot parse '" + text + "' for key '" + key + "'");
    return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw FormatError(key, "expected true/false for key '" + key + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
std::string optional_text(const std::optional<T>& v) {
    if (!v) return "auto";
    if constexpr (std::is_floating_point_v<T>) return format_double(*v);
    else return std::to_string(*v);
}

template <typename T>
std::optional<T> parse_optional(const std::string& key, const std::string& text) {
    if (text == "auto") return std::nullopt;
    return parse_number<T>(key, text);
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"input", [](RunConfig& c, const std::string&, const std::string& v) { c.input = v; }},
        {"output", [](RunConfig& c, const std::string&, const std::string& v) { c.output = v; }},
        {"reference", [](RunConfig& c, const std::string&, const std::string& v) { c.reference = v; }},
        {"n", [](RunConfig& c, const std::string& k, const std::string& v) { c.n = parse_number<Index>(k, v); }},
        {"mu", [](RunConfig& c, const std::string& k, const std::string& v) { c.mu = parse_number<double>(k, v); }},
        {"sigma", [](RunConfig& c, const std::string& k, const std::string& v) { c.sigma = parse_number<double>(k, v); }},
        {"n_voices", [](RunConfig& c, const std::string& k, const std::string& v) { c.n_voices = parse_number<int>(k, v); }},
        {"j_min", [](RunConfig& c, const std::string& k, const std::string& v) { c.j_min = parse_optional<int>(k, v); }},
        {"j_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.j_max = parse_optional<int>(k, v); }},
        {"gamma", [](RunConfig& c, const std::string& k, const std::string& v) { c.gamma = parse_number<double>(k, v); }},
        {"k_min", [](RunConfig& c, const std::string& k, const std::string& v) { c.k_min = parse_optional<double>(k, v); }},
        {"k_max", [](RunConfig& c, const std::string& k, const std::string& v) { c.k_max = parse_optional<double>(k, v); }},
        {"n_modes", [](RunConfig& c, const std::string& k, const std::string& v) { c.n_modes = parse_number<int>(k, v); }},
        {"kappa", [](RunConfig& c, const std::string& k, const std::string& v) { c.kappa = parse_number<int>(k, v); }},
        {"trim", [](RunConfig& c, const std::string& k, const std::string& v) { c.trim = parse_number<double>(k, v); }},
        {"directional", [](RunConfig& c, const std::string& k, const std::string& v) { c.directional = parse_bool(k, v); }},
        {"orientations",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.orientations = parse_number<int>(k, v); }},
        {"ridge", [](RunConfig& c, const std::string&, const std::string& v) { c.ridge = v; }},
        {"slice_y", [](RunConfig& c, const std::string& k, const std::string& v) { c.slice_y = parse_number<double>(k, v); }},
    };
    return table;
}

}  // namespace

RidgeOptions RunConfig::ridge_options() const {
    RidgeOptions options;
    options.method = ridge == "argmax" ? RidgeMethod::neighborhood_argmax : RidgeMethod::tracking;
    options.peel_bins = kappa;
    return options;
}

void validate(const RunConfig& c) {
    if (c.n < 8 || c.n % 2 != 0) throw FormatError("n", "n must be even and at least 8");
    if (!(c.mu > 0.0)) throw FormatError("mu", "mu must be positive");
    if (!(c.sigma > 0.0)) throw FormatError("sigma", "sigma must be positive");
    if (c.n_voices < 1) throw FormatError("n_voices", "n_voices must be at least 1");
    if (c.j_min && c.j_max && *c.j_max < *c.j_min) throw FormatError("j_max", "j_max must not be below j_min");
    if (!(c.gamma > 0.0 && c.gamma < 1.0)) throw FormatError("gamma", "relative gamma must lie in (0, 1)");
    if (c.k_min && !(*c.k_min > 0.0)) throw FormatError("k_min", "k_min must be positive");
    if (c.k_min && c.k_max && !(*c.k_max > *c.k_min)) throw FormatError("k_max", "k_max must exceed k_min");
    if (c.n_modes < 1) throw FormatError("n_modes", "n_modes must be at least 1");
    if (c.kappa < 0) throw FormatError("kappa", "kappa must be non-negative");
    if (!(c.trim >= 0.0 && c.trim < 0.5)) throw FormatError("trim", "trim must lie in [0, 1/2)");
    if (c.orientations < 1) throw FormatError("orientations", "orientations must be at least 1");
    if (c.ridge != "tracking" && c.ridge != "argmax") throw FormatError("ridge", "ridge must be tracking or argmax");
    if (!(c.slice_y >= 0.0 && c.slice_y < 1.0)) throw FormatError("slice_y", "slice_y must lie in [0, 1)");
}

std::string to_text(const RunConfig& c) {
    std::ostringstream os;
    os << "input = " << c.input << '\n'
       << "output = " << c.output << '\n'
       << "reference = " << c.reference << '\n'
       << "n = " << c.n << '\n'
       << "mu = " << format_double(c.mu) << '\n'
       << "sigma = " << format_double(c.sigma) << '\n'
       << "n_voices = " << c.n_voices << '\n'
       << "j_min = " << optional_text(c.j_min) << '\n'
       << "j_max = " << optional_text(c.j_max) << '\n'
       << "gamma = " << format_double(c.gamma) << '\n'
       << "k_min = " << optional_text(c.k_min) << '\n'
       << "k_max = " << optional_text(c.k_max) << '\n'
       << "n_modes = " << c.n_modes << '\n'
       << "kappa = " << c.kappa << '\n'
       << "trim = " << format_double(c.trim) << '\n'
       << "directional = " << (c.directional ? "true" : "false") << '\n'
       << "orientations = " << c.orientations << '\n'
       << "ridge = " << c.ridge << '\n'
       << "slice_y = " << format_double(c.slice_y) << '\n';
    return os.str();
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError(line, "expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) throw FormatError(key, "unknown config key '" + key + "'");
        it->second(base, key, value);
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw FormatError("config", "cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), std::move(base));
}

nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j;
    std::istringstream in(to_text(c));
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        j[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    j["n"] = c.n;
    j["mu"] = c.mu;
    j["sigma"] = c.sigma;
    j["n_voices"] = c.n_voices;
    j["gamma"] = c.gamma;
    j["n_modes"] = c.n_modes;
    j["kappa"] = c.kappa;
    j["trim"] = c.trim;
    j["directional"] = c.directional;
    j["orientations"] = c.orientations;
    j["slice_y"] = c.slice_y;
    if (c.j_min) j["j_min"] = *c.j_min;
    if (c.j_max) j["j_max"] = *c.j_max;
    if (c.k_min) j["k_min"] = *c.k_min;
    if (c.k_max) j["k_max"] = *c.k_max;
    return j;
}

ScaleGrid resolve_grid(const RunConfig& c, Index height, Index width, double dx) {
    ScaleGrid grid = default_scale_grid(c.wavelet(), height, width, dx, c.n_voices);
    if (c.j_min) grid.j_min = *c.j_min;
    if (c.j_max) grid.j_max = *c.j_max;
    validate(grid);
    return grid;
}

FrequencyBins resolve_bins(const RunConfig& c, const ScaleGrid& grid) {
    if (!c.k_min && !c.k_max) return matched_bins(c.wavelet(), grid);
    const FrequencyBins matched = matched_bins(c.wavelet(), grid);
    return log_bins(c.k_min.value_or(matched.k_values.front()), c.k_max.value_or(matched.k_values.back()), c.n_voices);
}

}  // namespace msst
