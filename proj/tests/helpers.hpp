#ifndef MSST_TEST_HELPERS_HPP
#define MSST_TEST_HELPERS_HPP

#include "msst/field.hpp"

#include <cmath>
#include <random>

namespace msst::test {

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Quaternion<double> random_quaternion() { return {uniform(), uniform(), uniform(), uniform()}; }
inline CliffordVector<double> random_clifford() { return {uniform(), uniform(), uniform()}; }

inline double distance(const Quaternion<double>& a, const Quaternion<double>& b) { return norm(a - b); }

inline Field random_field(Index h, Index w, double dx = 1.0) {
    Field f(h, w, dx);
    std::normal_distribution<double> g;
    for (Index r = 0; r < h; ++r)
        for (Index c = 0; c < w; ++c) f(r, c) = g(rng());
    return f;
}

// Removes the DC term and the Nyquist row and column, where no real-valued
// odd multiplier exists.
Field strip_dc_and_nyquist(const Field& f);

inline double rel_l2(const Plane<double>& a, const Plane<double>& b) {
    return std::sqrt((a - b).square().sum()) / std::sqrt(b.square().sum());
}

}  // namespace msst::test

#endif  // MSST_TEST_HELPERS_HPP
