#pragma once

// Octonion arithmetic over the canonical basis {1 = J0, J1, ..., J7}.
//
// The basis products are generated from the seven Fano lines {i, i+1, i+3}
// (indices reduced into 1..7), each multiplying cyclically like a quaternion
// triple i j = k, and extended by anticommutativity.  Products of basis
// elements are stored as exact signed indices.

#include <array>
#include <cstddef>
#include <span>

namespace curvadapt {

/// J_i * J_j = sign * J_index.
struct SignedIndex {
    int sign = 1;
    int index = 0;
    friend bool operator==(const SignedIndex&, const SignedIndex&) = default;
};

class MultiplicationTable {
public:
    static constexpr std::size_t kDim = 8;

    /// The canonical table; built once, immutable afterwards.
    static const MultiplicationTable& canonical();

    SignedIndex operator()(std::size_t i, std::size_t j) const { return table_[i][j]; }

    /// The seven Fano lines as ordered triples (a, b, c) with J_a J_b = J_c.
    static constexpr std::array<std::array<int, 3>, 7> fano_lines() {
        std::array<std::array<int, 3>, 7> lines{};
        for (int i = 1; i <= 7; ++i) {
            lines[static_cast<std::size_t>(i - 1)] = {i, reduce_mod7(i + 1), reduce_mod7(i + 3)};
        }
        return lines;
    }

    /// Reduce a nonzero index into {1, ..., 7}.
    static constexpr int reduce_mod7(int i) { return ((i - 1) % 7 + 7) % 7 + 1; }

private:
    MultiplicationTable();
    std::array<std::array<SignedIndex, kDim>, kDim> table_{};
};

class Octonion {
public:
    static constexpr std::size_t kDim = 8;

    constexpr Octonion() = default;
    constexpr explicit Octonion(const std::array<double, kDim>& c) : c_(c) {}

    /// The canonical basis element J_i (J_0 = 1).
    static constexpr Octonion basis(std::size_t i) {
        Octonion o;
        o.c_[i] = 1.0;
        return o;
    }
    static constexpr Octonion one() { return basis(0); }
    static constexpr Octonion real(double a) {
        Octonion o;
        o.c_[0] = a;
        return o;
    }

    constexpr double operator[](std::size_t i) const { return c_[i]; }
    constexpr double& operator[](std::size_t i) { return c_[i]; }
    const std::array<double, kDim>& coeffs() const { return c_; }
    std::span<const double, kDim> span() const { return c_; }

    constexpr double re() const { return c_[0]; }

    Octonion& operator+=(const Octonion& o) {
        for (std::size_t i = 0; i < kDim; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Octonion& operator-=(const Octonion& o) {
        for (std::size_t i = 0; i < kDim; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Octonion& operator*=(double s) {
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
    friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
    friend Octonion operator-(Octonion a) { return a *= -1.0; }
    friend Octonion operator*(double s, Octonion a) { return a *= s; }
    friend Octonion operator*(Octonion a, double s) { return a *= s; }
    friend bool operator==(const Octonion&, const Octonion&) = default;

private:
    std::array<double, kDim> c_{};
};

Octonion multiply(const Octonion& a, const Octonion& b);
inline Octonion operator*(const Octonion& a, const Octonion& b) { return multiply(a, b); }

Octonion conjugate(const Octonion& a);

/// (a, b, c) = (ab)c - a(bc).
Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c);

double inner(const Octonion& a, const Octonion& b);
double norm_squared(const Octonion& a);
double norm(const Octonion& a);

}  // namespace curvadapt
