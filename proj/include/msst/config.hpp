#ifndef MSST_CONFIG_HPP
#define MSST_CONFIG_HPP

#include "msst/modes.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace msst {

struct RunConfig {
    std::string input;
    std::string output = "out";
    std::string reference;  // comma-separated field stems for eval
    Index n = 512;
    double mu = 1.0;
    double sigma = 2.0;
    int n_voices = 32;
    std::optional<int> j_min;
    std::optional<int> j_max;
    double gamma = 1e-4;  // relative to max |c_F|
    std::optional<double> k_min;
    std::optional<double> k_max;
    int n_modes = 3;
    int kappa = 5;
    double trim = 0.125;
    bool directional = false;
    int orientations = 8;
    std::string ridge = "tracking";
    double slice_y = 0.5;

    WaveletSpec wavelet() const { return {mu, sigma, 1.0}; }
    RidgeOptions ridge_options() const;
};

// Throws FormatError naming the first out-of-range key.
void validate(const RunConfig& config);

// key = value lines; '#' starts a comment. Unknown keys are rejected.
std::string to_text(const RunConfig& config);
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
nlohmann::json to_json(const RunConfig& config);

ScaleGrid resolve_grid(const RunConfig& config, Index height, Index width, double dx);
FrequencyBins resolve_bins(const RunConfig& config, const ScaleGrid& grid);

}  // namespace msst

#endif  // MSST_CONFIG_HPP
