#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace curvadapt {

using Rng = std::mt19937_64;

/// Default seed for every randomized routine and CLI run.
inline constexpr std::uint64_t kDefaultSeed = 0;

/// Independent generator for trial `index` of a seeded run (splitmix64 mix), so
/// trials can be evaluated in any order or in parallel with identical results.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return Rng(z);
}

inline Eigen::VectorXd gaussian_vector(Rng& rng, Eigen::Index n) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

inline Eigen::VectorXd random_unit_vector(Rng& rng, Eigen::Index n) {
    Eigen::VectorXd v = gaussian_vector(rng, n);
    return v / v.norm();
}

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace curvadapt
