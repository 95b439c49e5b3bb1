#ifndef MSST_IO_HPP
#define MSST_IO_HPP

// Field files: payload <stem>.f64 (little-endian doubles, row-major, components
// concatenated) and sidecar <stem>.json describing the geometry.

#include "msst/squeeze.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace msst {

// Malformed or inconsistent input; `key` names the offending header entry or parameter.
class FormatError : public std::runtime_error {
public:
    FormatError(std::string key, const std::string& what) : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

struct RawFieldFile {
    nlohmann::json header;
    Index width = 0;
    Index height = 0;
    double dx = 1.0;
    Index components = 0;
    std::vector<double> payload;

    Plane<double> component(Index index) const;
};

void write_raw(const std::filesystem::path& stem, nlohmann::json header, const std::vector<const Plane<double>*>& planes);
// Streams `components` planes, each filled by produce(index, plane).
void write_raw(const std::filesystem::path& stem, nlohmann::json header, Index height, Index width, Index components,
               const std::function<void(Index, Plane<double>&)>& produce);
RawFieldFile read_raw(const std::filesystem::path& stem);

void write_field(const std::filesystem::path& stem, const Field& f);
void write_field(const std::filesystem::path& stem, const Clifford& f);
Field read_scalar_field(const std::filesystem::path& stem);
Clifford read_clifford_field(const std::filesystem::path& stem);

// Binary PGM (P5), 8 or 16 bit, rescaled to [0, 1]; dx = 1 / width.
Field read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const Field& f);

void write_scale_stack(const std::filesystem::path& stem, const ScaleStack& stack);
ScaleStack read_scale_stack(const std::filesystem::path& stem);

// Planes for the bins between the first and last non-empty one.
void write_squeeze(const std::filesystem::path& stem, const SqueezeStack& sq);
SqueezeStack read_squeeze(const std::filesystem::path& stem);

}  // namespace msst

#endif  // MSST_IO_HPP
