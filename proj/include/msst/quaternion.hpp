#ifndef MSST_QUATERNION_HPP
#define MSST_QUATERNION_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace msst {

// Element of H = span{1, i, j, k} with i^2 = j^2 = k^2 = -1 and ij = -ji = k.
template <typename Scalar>
struct Quaternion {
    Scalar w{0};  // real part
    Scalar x{0};  // i
    Scalar y{0};  // j
    Scalar z{0};  // k

    constexpr Quaternion() = default;
    constexpr Quaternion(Scalar w_, Scalar x_ = 0, Scalar y_ = 0, Scalar z_ = 0) : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr Quaternion i() { return {0, 1, 0, 0}; }
    static constexpr Quaternion j() { return {0, 0, 1, 0}; }
    static constexpr Quaternion k() { return {0, 0, 0, 1}; }

    constexpr Quaternion& operator+=(const Quaternion& r) {
        w += r.w;
        x += r.x;
        y += r.y;
        z += r.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& r) {
        w -= r.w;
        x -= r.x;
        y -= r.y;
        z -= r.z;
        return *this;
    }
    constexpr Quaternion& operator*=(Scalar s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    constexpr Scalar squared_norm() const { return w * w + x * x + y * y + z * z; }
    Scalar norm() const { return std::sqrt(squared_norm()); }
    // |Vect(q)|
    Scalar vector_norm() const { return std::sqrt(x * x + y * y + z * z); }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

template <typename Scalar>
constexpr Quaternion<Scalar> operator+(Quaternion<Scalar> q, const Quaternion<Scalar>& r) {
    return q += r;
}
template <typename Scalar>
constexpr Quaternion<Scalar> operator-(Quaternion<Scalar> q, const Quaternion<Scalar>& r) {
    return q -= r;
}
template <typename Scalar>
constexpr Quaternion<Scalar> operator-(const Quaternion<Scalar>& q) {
    return {-q.w, -q.x, -q.y, -q.z};
}
template <typename Scalar>
constexpr Quaternion<Scalar> operator*(Quaternion<Scalar> q, Scalar s) {
    return q *= s;
}
template <typename Scalar>
constexpr Quaternion<Scalar> operator*(Scalar s, Quaternion<Scalar> q) {
    return q *= s;
}

// Hamilton product.
template <typename Scalar>
constexpr Quaternion<Scalar> mul(const Quaternion<Scalar>& q, const Quaternion<Scalar>& r) {
    return {q.w * r.w - q.x * r.x - q.y * r.y - q.z * r.z,
            q.w * r.x + q.x * r.w + q.y * r.z - q.z * r.y,
            q.w * r.y - q.x * r.z + q.y * r.w + q.z * r.x,
            q.w * r.z + q.x * r.y - q.y * r.x + q.z * r.w};
}

template <typename Scalar>
constexpr Quaternion<Scalar> operator*(const Quaternion<Scalar>& q, const Quaternion<Scalar>& r) {
    return mul(q, r);
}

template <typename Scalar>
constexpr Quaternion<Scalar> conj(const Quaternion<Scalar>& q) {
    return {q.w, -q.x, -q.y, -q.z};
}

template <typename Scalar>
Scalar norm(const Quaternion<Scalar>& q) {
    return q.norm();
}

// conj(q) / |q|^2. Throws std::domain_error for q = 0.
template <typename Scalar>
Quaternion<Scalar> inverse(const Quaternion<Scalar>& q) {
    const Scalar n2 = q.squared_norm();
    if (n2 == Scalar(0)) throw std::domain_error("non-invertible");
    return conj(q) * (Scalar(1) / n2);
}

// Quaternion with vanishing k-part. Sums of Clifford vectors stay Clifford
// vectors; products in general do not, so mul() returns a full Quaternion.
template <typename Scalar>
struct CliffordVector {
    Scalar w{0};
    Scalar x{0};
    Scalar y{0};

    constexpr CliffordVector() = default;
    constexpr CliffordVector(Scalar w_, Scalar x_ = 0, Scalar y_ = 0) : w(w_), x(x_), y(y_) {}

    constexpr operator Quaternion<Scalar>() const { return {w, x, y, 0}; }

    constexpr CliffordVector& operator+=(const CliffordVector& r) {
        w += r.w;
        x += r.x;
        y += r.y;
        return *this;
    }
    constexpr CliffordVector& operator*=(Scalar s) {
        w *= s;
        x *= s;
        y *= s;
        return *this;
    }
    Scalar norm() const { return std::sqrt(w * w + x * x + y * y); }

    friend constexpr bool operator==(const CliffordVector&, const CliffordVector&) = default;
};

template <typename Scalar>
constexpr CliffordVector<Scalar> operator+(CliffordVector<Scalar> q, const CliffordVector<Scalar>& r) {
    return q += r;
}
template <typename Scalar>
constexpr CliffordVector<Scalar> operator*(Scalar s, CliffordVector<Scalar> q) {
    return q *= s;
}

// Drops the k-part.
template <typename Scalar>
constexpr CliffordVector<Scalar> to_clifford(const Quaternion<Scalar>& q) {
    return {q.w, q.x, q.y};
}

template <typename Scalar>
struct PolarForm {
    Scalar amplitude{0};
    Scalar phase{0};        // [0, pi]
    Scalar orientation{0};  // [0, 2 pi)
};

// A (cos phi + sin phi cos theta i + sin phi sin theta j) = A e^{phi n_theta}.
template <typename Scalar>
CliffordVector<Scalar> exp_polar(Scalar amplitude, Scalar phase, Scalar orientation) {
    if (!(amplitude >= Scalar(0))) throw std::domain_error("exp_polar: negative amplitude");
    const Scalar s = std::sin(phase);
    return {amplitude * std::cos(phase), amplitude * s * std::cos(orientation), amplitude * s * std::sin(orientation)};
}

template <typename Scalar>
CliffordVector<Scalar> exp_polar(const PolarForm<Scalar>& p) {
    return exp_polar(p.amplitude, p.phase, p.orientation);
}

// Orientation is set to 0 when the vector part vanishes.
template <typename Scalar>
PolarForm<Scalar> polar_decompose(const CliffordVector<Scalar>& q) {
    const Scalar amplitude = q.norm();
    if (amplitude == Scalar(0)) throw std::domain_error("polar_decompose: zero input");
    const Scalar v = std::hypot(q.x, q.y);
    PolarForm<Scalar> p;
    p.amplitude = amplitude;
    p.phase = std::atan2(v, q.w);
    if (v > Scalar(0)) {
        Scalar theta = std::atan2(q.y, q.x);
        if (theta < Scalar(0)) theta += Scalar(2) * std::numbers::pi_v<Scalar>;
        // atan2 can round -0 up to exactly 2 pi
        if (theta >= Scalar(2) * std::numbers::pi_v<Scalar>) theta = Scalar(0);
        p.orientation = theta;
    }
    return p;
}

}  // namespace msst

#endif  // MSST_QUATERNION_HPP
