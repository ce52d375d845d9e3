#include "curvadapt/cayley_plane.hpp"

#include "curvadapt/errors.hpp"
#include "curvadapt/random.hpp"

#include <algorithm>
#include <cmath>

namespace curvadapt::cayley {

Eigen::VectorXd TangentPair::to_vector() const {
    Eigen::VectorXd v(kDim);
    for (std::size_t i = 0; i < 8; ++i) {
        v[static_cast<Eigen::Index>(i)] = first[i];
        v[static_cast<Eigen::Index>(i + 8)] = second[i];
    }
    return v;
}

TangentPair TangentPair::from_vector(const Eigen::VectorXd& v) {
    TangentPair p;
    for (std::size_t i = 0; i < 8; ++i) {
        p.first[i] = v[static_cast<Eigen::Index>(i)];
        p.second[i] = v[static_cast<Eigen::Index>(i + 8)];
    }
    return p;
}

TangentPair TangentPair::basis(int k) {
    TangentPair p;
    if (k < 8) {
        p.first = Octonion::basis(static_cast<std::size_t>(k));
    } else {
        p.second = Octonion::basis(static_cast<std::size_t>(k - 8));
    }
    return p;
}

double inner(const TangentPair& x, const TangentPair& y) {
    return curvadapt::inner(x.first, y.first) + curvadapt::inner(x.second, y.second);
}

double norm(const TangentPair& x) { return std::sqrt(inner(x, x)); }

TangentPair curvature(const TangentPair& x, const TangentPair& y, const TangentPair& z, SpaceSign s,
                      TensorVariant variant) {
    const Octonion& a = x.first;
    const Octonion& b = x.second;
    const Octonion& c = y.first;
    const Octonion& d = y.second;
    const Octonion& e = z.first;
    const Octonion& f = z.second;

    const Octonion ad_cb = a * d - c * b;

    Octonion first = 4.0 * curvadapt::inner(c, e) * a - 4.0 * curvadapt::inner(a, e) * c +
                     (e * d) * conjugate(b) - (e * b) * conjugate(d) + ad_cb * conjugate(f);

    const Octonion tail = variant == TensorVariant::corrected ? ad_cb : a * d - b * c;
    Octonion second = 4.0 * curvadapt::inner(d, f) * b - 4.0 * curvadapt::inner(b, f) * d +
                      conjugate(a) * (c * f) - conjugate(c) * (a * f) - conjugate(e) * tail;

    const double scale = sign_value(s) * kMetricScale / 4.0;
    return {scale * first, scale * second};
}

namespace {

void require_unit(const TangentPair& xi) {
    const double n = norm(xi);
    if (std::abs(n - 1.0) > 1e-12) throw NormalizationError("normal vector must be a unit vector", n);
}

}  // namespace

SelfAdjointOperator jacobi_operator(const TangentPair& xi, SpaceSign s, TensorVariant variant) {
    require_unit(xi);
    Eigen::MatrixXd m(kDim, kDim);
    for (int k = 0; k < kDim; ++k) {
        m.col(k) = curvature(TangentPair::basis(k), xi, xi, s, variant).to_vector();
    }
    return SelfAdjointOperator(m);
}

double sectional_curvature(const TangentPair& x, const TangentPair& y, SpaceSign s) {
    const double xx = inner(x, x);
    const double yy = inner(y, y);
    const double xy = inner(x, y);
    const double gram = xx * yy - xy * xy;
    if (gram < 1e-14) throw DegeneratePlaneError(gram);
    return inner(curvature(x, y, y, s), x) / gram;
}

Spectrum jacobi_spectrum(const TangentPair& xi, SpaceSign s, double gap) {
    return decompose(jacobi_operator(xi, s), gap);
}

AdaptedFrame adapted_frame(const TangentPair& xi, SpaceSign s) {
    const Spectrum spec = jacobi_spectrum(xi, s);
    const double sg = sign_value(s);
    const EigenGroup* four = spec.find(4.0 * sg);
    const EigenGroup* one = spec.find(1.0 * sg);
    if (four == nullptr || one == nullptr || four->multiplicity != 7 || one->multiplicity != 8) {
        throw Error("Jacobi operator does not have the expected {4:7, 1:8} eigenstructure");
    }

    AdaptedFrame frame;
    frame.xi = xi;
    for (Eigen::Index c = 0; c < four->basis.cols(); ++c) {
        frame.four_space.push_back(TangentPair::from_vector(four->basis.col(c)));
    }
    for (Eigen::Index c = 0; c < one->basis.cols(); ++c) {
        frame.one_space.push_back(TangentPair::from_vector(one->basis.col(c)));
    }
    frame.max_residual = spec.max_residual;

    Eigen::MatrixXd all(kDim, kDim);
    all.col(0) = xi.to_vector();
    all.middleCols(1, 7) = four->basis;
    all.middleCols(8, 8) = one->basis;
    frame.gram_error = (all.transpose() * all - Eigen::MatrixXd::Identity(kDim, kDim)).cwiseAbs().maxCoeff();
    return frame;
}

// Totally geodesic subspaces ------------------------------------------------

namespace {

Subspace coordinate_subspace(std::string name, const std::vector<int>& coords) {
    Subspace v{std::move(name), Eigen::MatrixXd::Zero(kDim, static_cast<Eigen::Index>(coords.size()))};
    for (std::size_t i = 0; i < coords.size(); ++i) v.basis(coords[i], static_cast<Eigen::Index>(i)) = 1.0;
    return v;
}

}  // namespace

std::vector<Subspace> totally_geodesic_candidates() {
    // H = span{1, J1, J2, J4}: the Fano line {1, 2, 4} together with the unit.
    return {
        coordinate_subspace("point", {}),
        coordinate_subspace("OP1", {8, 9, 10, 11, 12, 13, 14, 15}),
        coordinate_subspace("HP2", {0, 1, 2, 4, 8, 9, 10, 12}),
        coordinate_subspace("CP2", {0, 1, 8, 9}),
        coordinate_subspace("RP2", {0, 8}),
        coordinate_subspace("S4", {8, 9, 10, 12}),
    };
}

double lie_triple_defect(const Subspace& v, SpaceSign s, int samples, unsigned long long seed) {
    const Eigen::Index k = v.basis.cols();
    if (k == 0) return 0.0;
    const Eigen::MatrixXd proj = v.basis * v.basis.transpose();
    Rng rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const auto x = TangentPair::from_vector(v.basis * gaussian_vector(rng, k));
        const auto y = TangentPair::from_vector(v.basis * gaussian_vector(rng, k));
        const auto z = TangentPair::from_vector(v.basis * gaussian_vector(rng, k));
        const Eigen::VectorXd r = curvature(x, y, z, s).to_vector();
        worst = std::max(worst, (r - proj * r).norm());
    }
    return worst;
}

NormalSplit normal_split(const Subspace& v, const TangentPair& xi, SpaceSign s) {
    NormalSplit out;
    if (v.basis.cols() == 0) return out;
    const Eigen::MatrixXd m = jacobi_operator(xi, s).matrix();
    const Eigen::MatrixXd kv = m * v.basis;
    out.invariance_defect = (kv - v.basis * (v.basis.transpose() * kv)).cwiseAbs().maxCoeff();

    const Eigen::MatrixXd restricted = v.basis.transpose() * kv;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (restricted + restricted.transpose()));
    const double sg = sign_value(s);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double mu = solver.eigenvalues()[i];
        if (std::abs(mu - 4.0 * sg) < 1e-6) ++out.four_dim;
        if (std::abs(mu - 1.0 * sg) < 1e-6) ++out.one_dim;
    }
    return out;
}

CurvatureAdaptedCheck check_curvature_adapted(const Subspace& v, SpaceSign s, int normals,
                                              unsigned long long seed) {
    CurvatureAdaptedCheck out;
    out.name = v.name;
    out.lie_triple = lie_triple_defect(v, s, 16, seed) < 1e-10;

    const Eigen::MatrixXd normal_proj =
        Eigen::MatrixXd::Identity(kDim, kDim) - v.basis * v.basis.transpose();
    Rng rng(seed + 1);
    bool constant = true;
    for (int i = 0; i < normals; ++i) {
        Eigen::VectorXd xi = normal_proj * gaussian_vector(rng, kDim);
        xi /= xi.norm();
        const NormalSplit split = normal_split(v, TangentPair::from_vector(xi), s);
        out.max_defect = std::max(out.max_defect, split.invariance_defect);
        if (i == 0) {
            out.four_dim = split.four_dim;
            out.one_dim = split.one_dim;
        } else if (split.four_dim != out.four_dim || split.one_dim != out.one_dim) {
            constant = false;
        }
    }
    out.curvature_adapted = out.lie_triple && constant && out.max_defect < 1e-9 &&
                            out.four_dim + out.one_dim == v.basis.cols();
    return out;
}

}  // namespace curvadapt::cayley
