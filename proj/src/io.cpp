#include "msst/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>

namespace msst {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path with_ext(const fs::path& stem, const char* ext) {
    fs::path p = stem;
    p += ext;
    return p;
}

void to_little_endian(std::vector<double>& v) {
    if constexpr (std::endian::native == std::endian::big) {
        for (auto& x : v) x = std::bit_cast<double>(__builtin_bswap64(std::bit_cast<std::uint64_t>(x)));
    }
}

template <typename T>
T require(const json& header, const char* key) {
    if (!header.contains(key)) throw FormatError(key, std::string("header is missing key '") + key + "'");
    try {
        return header.at(key).get<T>();
    } catch (const json::exception&) {
        throw FormatError(key, std::string("header key '") + key + "' has the wrong type");
    }
}

}  // namespace

Plane<double> RawFieldFile::component(Index index) const {
    if (index < 0 || index >= components) throw FormatError("components", "component index out of range");
    Plane<double> out(height, width);
    std::memcpy(out.data(), payload.data() + index * width * height, sizeof(double) * static_cast<std::size_t>(width * height));
    return out;
}

void write_raw(const fs::path& stem, json header, Index height, Index width, Index components,
               const std::function<void(Index, Plane<double>&)>& produce) {
    header["width"] = width;
    header["height"] = height;
    header["components"] = components;
    header["dtype"] = "f64le";
    header["order"] = "row-major";
    if (stem.has_parent_path()) fs::create_directories(stem.parent_path());
    std::ofstream payload(with_ext(stem, ".f64"), std::ios::binary);
    if (!payload) throw std::runtime_error("cannot open " + with_ext(stem, ".f64").string() + " for writing");
    Plane<double> plane(height, width);
    std::vector<double> buffer(static_cast<std::size_t>(height * width));
    for (Index i = 0; i < components; ++i) {
        produce(i, plane);
        if (plane.rows() != height || plane.cols() != width)
            throw std::invalid_argument("write_raw: components differ in size");
        std::memcpy(buffer.data(), plane.data(), sizeof(double) * buffer.size());
        to_little_endian(buffer);
        payload.write(reinterpret_cast<const char*>(buffer.data()),
                      static_cast<std::streamsize>(sizeof(double) * buffer.size()));
    }
    std::ofstream sidecar(with_ext(stem, ".json"));
    sidecar << header.dump(2) << '\n';
    if (!payload || !sidecar) throw std::runtime_error("failed writing " + stem.string());
}

void write_raw(const fs::path& stem, json header, const std::vector<const Plane<double>*>& planes) {
    if (planes.empty()) throw std::invalid_argument("write_raw: nothing to write");
    write_raw(stem, std::move(header), planes.front()->rows(), planes.front()->cols(),
              static_cast<Index>(planes.size()),
              [&](Index i, Plane<double>& out) { out = *planes[static_cast<std::size_t>(i)]; });
}

RawFieldFile read_raw(const fs::path& stem) {
    RawFieldFile f;
    std::ifstream sidecar(with_ext(stem, ".json"));
    if (!sidecar) throw FormatError("path", "cannot open " + with_ext(stem, ".json").string());
    try {
        f.header = json::parse(sidecar);
    } catch (const json::parse_error& e) {
        throw FormatError("header", std::string("corrupt header: ") + e.what());
    }
    f.width = require<Index>(f.header, "width");
    f.height = require<Index>(f.header, "height");
    f.dx = require<double>(f.header, "dx");
    f.components = require<Index>(f.header, "components");
    if (require<std::string>(f.header, "dtype") != "f64le") throw FormatError("dtype", "unsupported dtype");
    if (require<std::string>(f.header, "order") != "row-major") throw FormatError("order", "unsupported order");
    if (f.width <= 0 || f.height <= 0) throw FormatError("width", "non-positive geometry");
    if (!(f.dx > 0.0)) throw FormatError("dx", "dx must be positive");
    if (f.components <= 0) throw FormatError("components", "components must be positive");

    const auto count = static_cast<std::size_t>(f.width * f.height * f.components);
    const fs::path payload_path = with_ext(stem, ".f64");
    std::error_code ec;
    const auto bytes = fs::file_size(payload_path, ec);
    if (ec) throw FormatError("path", "cannot open " + payload_path.string());
    if (bytes != count * sizeof(double))
        throw FormatError("components", "payload size " + std::to_string(bytes) + " does not match header (" +
                                            std::to_string(count * sizeof(double)) + " bytes expected)");
    std::ifstream payload(payload_path, std::ios::binary);
    f.payload.resize(count);
    payload.read(reinterpret_cast<char*>(f.payload.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (!payload) throw FormatError("path", "short read on " + payload_path.string());
    to_little_endian(f.payload);
    return f;
}

void write_field(const fs::path& stem, const Field& f) { write_raw(stem, json{{"dx", f.dx}}, {&f.values}); }

void write_field(const fs::path& stem, const Clifford& f) {
    write_raw(stem, json{{"dx", f.dx}}, {&f.re, &f.ri, &f.rj});
}

Field read_scalar_field(const fs::path& stem) {
    const auto raw = read_raw(stem);
    if (raw.components != 1) throw FormatError("components", "expected a scalar field (components = 1)");
    return Field(raw.component(0), raw.dx);
}

Clifford read_clifford_field(const fs::path& stem) {
    const auto raw = read_raw(stem);
    if (raw.components != 3) throw FormatError("components", "expected a Clifford field (components = 3)");
    Clifford out;
    out.re = raw.component(0);
    out.ri = raw.component(1);
    out.rj = raw.component(2);
    out.dx = raw.dx;
    return out;
}

Field read_pgm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("input", "cannot open " + path.string());
    auto next_token = [&]() {
        std::string token;
        char ch = 0;
        while (in.get(ch)) {
            if (ch == '#') {
                std::string comment;
                std::getline(in, comment);
                if (!token.empty()) break;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(ch))) {
                if (!token.empty()) break;
                continue;
            }
            token.push_back(ch);
        }
        return token;
    };
    if (next_token() != "P5") throw FormatError("input", "not a binary PGM (P5) file");
    long width = 0, height = 0, maxval = 0;
    try {
        width = std::stol(next_token());
        height = std::stol(next_token());
        maxval = std::stol(next_token());
    } catch (const std::exception&) {
        throw FormatError("input", "corrupt PGM header");
    }
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) throw FormatError("input", "corrupt PGM header");
    const int bytes_per_sample = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> data(static_cast<std::size_t>(width * height * bytes_per_sample));
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!in) throw FormatError("input", "truncated PGM payload");
    Field out(height, width, 1.0 / static_cast<double>(width));
    for (long i = 0; i < width * height; ++i) {
        const unsigned value = bytes_per_sample == 1 ? data[i] : (unsigned(data[2 * i]) << 8) | data[2 * i + 1];
        out.values(i / width, i % width) = static_cast<double>(value) / static_cast<double>(maxval);
    }
    return out;
}

void write_pgm(const fs::path& path, const Field& f) {
    const double lo = f.values.minCoeff();
    const double hi = f.values.maxCoeff();
    const double span = hi > lo ? hi - lo : 1.0;
    std::ofstream out(path, std::ios::binary);
    out << "P5\n" << f.width() << ' ' << f.height() << "\n255\n";
    for (Index r = 0; r < f.height(); ++r)
        for (Index c = 0; c < f.width(); ++c)
            out.put(static_cast<char>(std::lround(255.0 * (f(r, c) - lo) / span)));
}

void write_scale_stack(const fs::path& stem, const ScaleStack& stack) {
    std::vector<const Plane<double>*> planes;
    for (const auto& level : stack.levels)
        for (const Clifford* c : {&level.coeff, &level.db1, &level.db2}) {
            planes.push_back(&c->re);
            planes.push_back(&c->ri);
            planes.push_back(&c->rj);
        }
    json header{{"dx", stack.dx()},
                {"scales", stack.grid.scales()},
                {"mu", stack.spec.mu},
                {"sigma", stack.spec.sigma},
                {"n_v", stack.grid.n_voices},
                {"j_min", stack.grid.j_min},
                {"j_max", stack.grid.j_max},
                {"warnings", stack.warnings}};
    write_raw(stem, std::move(header), planes);
}

ScaleStack read_scale_stack(const fs::path& stem) {
    const auto raw = read_raw(stem);
    ScaleStack stack;
    stack.spec.mu = require<double>(raw.header, "mu");
    stack.spec.sigma = require<double>(raw.header, "sigma");
    stack.grid.n_voices = require<int>(raw.header, "n_v");
    stack.grid.j_min = require<int>(raw.header, "j_min");
    stack.grid.j_max = require<int>(raw.header, "j_max");
    const auto scales = require<std::vector<double>>(raw.header, "scales");
    if (raw.header.contains("warnings")) stack.warnings = raw.header["warnings"].get<std::vector<std::string>>();
    if (stack.grid.j_max < stack.grid.j_min || scales.size() != stack.grid.size())
        throw FormatError("scales", "scale list does not match j_min/j_max");
    if (raw.components != static_cast<Index>(9 * scales.size()))
        throw FormatError("components", "expected 9 components per scale");
    Index next = 0;
    auto take = [&](Clifford& c) {
        c.re = raw.component(next++);
        c.ri = raw.component(next++);
        c.rj = raw.component(next++);
        c.dx = raw.dx;
    };
    for (double a : scales) {
        ScaleCoefficients level;
        level.scale = a;
        take(level.coeff);
        take(level.db1);
        take(level.db2);
        stack.levels.push_back(std::move(level));
    }
    return stack;
}

void write_squeeze(const fs::path& stem, const SqueezeStack& sq) {
    std::size_t first = sq.bins.size();
    std::size_t last = 0;
    for (Index r = 0; r < sq.height; ++r)
        for (Index c = 0; c < sq.width; ++c)
            for (std::size_t p = 0; p < sq.bins.size(); ++p)
                if (sq.at(r, c, p).norm() != 0.0) {
                    first = std::min(first, p);
                    last = std::max(last, p);
                }
    if (first > last) first = last = 0;
    const std::size_t count = last - first + 1;
    json header{{"dx", sq.dx},
                {"k_values", sq.bins.k_values},
                {"k_edges", sq.bins.edges},
                {"gamma", sq.gamma},
                {"bin_offset", first},
                {"bin_count", count},
                {"kept_mass", sq.kept_mass},
                {"dropped_mass", sq.dropped_mass}};
    const Plane<double>* kept[3] = {&sq.kept_sum.re, &sq.kept_sum.ri, &sq.kept_sum.rj};
    write_raw(stem, std::move(header), sq.height, sq.width, static_cast<Index>(3 * count + 3),
              [&](Index i, Plane<double>& out) {
                  const auto q = static_cast<std::size_t>(i / 3);
                  const auto component = static_cast<int>(i % 3);
                  if (q == count) {
                      out = *kept[component];
                      return;
                  }
                  out.resize(sq.height, sq.width);
                  for (Index r = 0; r < sq.height; ++r)
                      for (Index c = 0; c < sq.width; ++c) {
                          const auto& v = sq.at(r, c, first + q);
                          out(r, c) = component == 0 ? v.w : component == 1 ? v.x : v.y;
                      }
              });
}

SqueezeStack read_squeeze(const fs::path& stem) {
    const auto raw = read_raw(stem);
    FrequencyBins bins;
    bins.k_values = require<std::vector<double>>(raw.header, "k_values");
    bins.edges = require<std::vector<double>>(raw.header, "k_edges");
    try {
        validate(bins);
    } catch (const std::invalid_argument& e) {
        throw FormatError("k_values", e.what());
    }
    const auto offset = require<std::size_t>(raw.header, "bin_offset");
    const auto count = require<std::size_t>(raw.header, "bin_count");
    if (offset + count > bins.size()) throw FormatError("bin_count", "stored bins exceed k_values");
    if (raw.components != static_cast<Index>(3 * count + 3)) throw FormatError("components", "component count mismatch");
    SqueezeStack sq(bins, raw.height, raw.width, raw.dx);
    sq.gamma = require<double>(raw.header, "gamma");
    sq.kept_mass = require<double>(raw.header, "kept_mass");
    sq.dropped_mass = require<double>(raw.header, "dropped_mass");
    const auto pixels = static_cast<std::size_t>(raw.width * raw.height);
    const double* base = raw.payload.data();
    for (std::size_t q = 0; q < count; ++q) {
        const double* re = base + (3 * q) * pixels;
        const double* ri = re + pixels;
        const double* rj = ri + pixels;
        for (std::size_t i = 0; i < pixels; ++i) sq.data[i * bins.size() + offset + q] = {re[i], ri[i], rj[i]};
    }
    const Index kept = static_cast<Index>(3 * count);
    sq.kept_sum.re = raw.component(kept);
    sq.kept_sum.ri = raw.component(kept + 1);
    sq.kept_sum.rj = raw.component(kept + 2);
    return sq;
}

}  // namespace msst
