#pragma once

// Randomized checks of the algebraic curvature-tensor identities.

#include "curvadapt/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>

namespace curvadapt {

struct IdentityDefects {
    double antisymmetry = 0.0;   ///< |R(x,y)z + R(y,x)z|
    double skew = 0.0;           ///< |<R(x,y)z,w> + <R(x,y)w,z>|
    double pair_symmetry = 0.0;  ///< |<R(x,y)z,w> - <R(z,w)x,y>|
    double bianchi = 0.0;        ///< |R(x,y)z + R(y,z)x + R(z,x)y|
};

/// Max defects over `samples` Gaussian quadruples; r(x, y, z) returns R(x,y)z.
template <class Tensor>
IdentityDefects tensor_defects(Tensor&& r, Eigen::Index dim, int samples, std::uint64_t seed) {
    IdentityDefects d;
    for (int i = 0; i < samples; ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        const Eigen::VectorXd x = gaussian_vector(rng, dim);
        const Eigen::VectorXd y = gaussian_vector(rng, dim);
        const Eigen::VectorXd z = gaussian_vector(rng, dim);
        const Eigen::VectorXd w = gaussian_vector(rng, dim);
        const Eigen::VectorXd rxyz = r(x, y, z);
        d.antisymmetry = std::max(d.antisymmetry, (rxyz + r(y, x, z)).norm());
        d.skew = std::max(d.skew, std::abs(rxyz.dot(w) + r(x, y, w).dot(z)));
        d.pair_symmetry = std::max(d.pair_symmetry, std::abs(rxyz.dot(w) - r(z, w, x).dot(y)));
        d.bianchi = std::max(d.bianchi, (rxyz + r(y, z, x) + r(z, x, y)).norm());
    }
    return d;
}

}  // namespace curvadapt
