#include "curvadapt/octonion.hpp"

#include <cmath>

namespace curvadapt {

MultiplicationTable::MultiplicationTable() {
    for (std::size_t i = 0; i < kDim; ++i) {
        table_[0][i] = {1, static_cast<int>(i)};
        table_[i][0] = {1, static_cast<int>(i)};
    }
    for (std::size_t i = 1; i < kDim; ++i) table_[i][i] = {-1, 0};

    for (const auto& line : fano_lines()) {
        const std::array<std::array<int, 3>, 3> cyclic{
            {{line[0], line[1], line[2]}, {line[1], line[2], line[0]}, {line[2], line[0], line[1]}}};
        for (const auto& [x, y, z] : cyclic) {
            table_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = {1, z};
            table_[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = {-1, z};
        }
    }
}

const MultiplicationTable& MultiplicationTable::canonical() {
    static const MultiplicationTable table;
    return table;
}

Octonion multiply(const Octonion& a, const Octonion& b) {
    const auto& table = MultiplicationTable::canonical();
    std::array<double, Octonion::kDim> r{};
    for (std::size_t i = 0; i < Octonion::kDim; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < Octonion::kDim; ++j) {
            const auto [sign, k] = table(i, j);
            r[static_cast<std::size_t>(k)] += sign * a[i] * b[j];
        }
    }
    return Octonion(r);
}

Octonion conjugate(const Octonion& a) {
    Octonion r = -a;
    r[0] = a[0];
    return r;
}

Octonion associator(const Octonion& a, const Octonion& b, const Octonion& c) {
    return multiply(multiply(a, b), c) - multiply(a, multiply(b, c));
}

double inner(const Octonion& a, const Octonion& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < Octonion::kDim; ++i) s += a[i] * b[i];
    return s;
}

double norm_squared(const Octonion& a) { return inner(a, a); }

double norm(const Octonion& a) { return std::sqrt(norm_squared(a)); }

}  // namespace curvadapt
