#include "curvadapt/grassmannian.hpp"

#include "curvadapt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace curvadapt::g2 {

namespace {

using Quat = Eigen::Vector4d;  // (re, i, j, k)

Quat qmul(const Quat& p, const Quat& q) {
    return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

template <class F>
Eigen::MatrixXd slotwise(int m, F f) {
    const int n = 4 * m;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int s = 0; s < m; ++s) {
        for (int c = 0; c < 4; ++c) {
            Quat e = Quat::Zero();
            e[c] = 1.0;
            out.block(4 * s, 4 * s + c, 4, 1) = f(e);
        }
    }
    return out;
}

constexpr double kUnitTol = 1e-12;
constexpr double kBoundaryTol = 1e-12;

void require_unit(const GrassTangent& xi) {
    const double n = xi.norm();
    if (std::abs(n - 1.0) > kUnitTol) throw NormalizationError("normal vector must be a unit vector", n);
}

}  // namespace

double BundleResiduals::max() const { return std::max({squares, quaternion, commutation, isometry}); }

StructureBundle StructureBundle::quaternionic_model(int m) {
    if (m < 1) throw InvalidArgument("m must be at least 1");
    const Quat i{0, 1, 0, 0};
    const Quat j{0, 0, 1, 0};
    const Quat k{0, 0, 0, 1};
    Eigen::MatrixXd left_i = slotwise(m, [&](const Quat& x) { return qmul(i, x); });
    Eigen::MatrixXd right_i = slotwise(m, [&](const Quat& x) { return qmul(x, i); });
    Eigen::MatrixXd right_j = slotwise(m, [&](const Quat& x) { return qmul(x, j); });
    Eigen::MatrixXd right_k = slotwise(m, [&](const Quat& x) { return qmul(x, k); });
    // (x j) i = -x k, so right multiplication reverses order; J3 = -R_k restores J1 J2 = J3.
    return StructureBundle(m, left_i, {right_i, right_j, -right_k});
}

Eigen::MatrixXd StructureBundle::combination(const Eigen::Vector3d& coeffs) const {
    return coeffs[0] * jq_[0] + coeffs[1] * jq_[1] + coeffs[2] * jq_[2];
}

StructureBundle StructureBundle::rotated(const Eigen::Matrix3d& rot) const {
    std::array<Eigen::MatrixXd, 3> jq;
    for (int a = 0; a < 3; ++a) jq[static_cast<std::size_t>(a)] = combination(rot.row(a).transpose());
    return StructureBundle(m_, j_, std::move(jq));
}

BundleResiduals StructureBundle::verify() const {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim(), dim());
    BundleResiduals r;
    auto upd = [](double& acc, const Eigen::MatrixXd& d) { acc = std::max(acc, d.cwiseAbs().maxCoeff()); };
    for (const Eigen::MatrixXd* a : {&j_, &jq_[0], &jq_[1], &jq_[2]}) {
        upd(r.squares, (*a) * (*a) + id);
        upd(r.isometry, a->transpose() * (*a) - id);
    }
    for (int a = 0; a < 3; ++a) {
        const auto& x = jq_[static_cast<std::size_t>(a)];
        const auto& y = jq_[static_cast<std::size_t>((a + 1) % 3)];
        const auto& z = jq_[static_cast<std::size_t>((a + 2) % 3)];
        upd(r.quaternion, x * y - z);
        upd(r.commutation, j_ * x - x * j_);
    }
    return r;
}

GrassTangent curvature_g2(const GrassTangent& x, const GrassTangent& y, const GrassTangent& z,
                          const StructureBundle& s, SpaceSign sign, TensorVariant variant) {
    const bool verbatim = variant == TensorVariant::verbatim;
    const Eigen::MatrixXd& J = s.J();
    const GrassTangent jx = J * x;
    const GrassTangent jy = J * y;
    const GrassTangent jz = J * z;

    GrassTangent r = y.dot(z) * x - x.dot(z) * y;
    r += jy.dot(z) * jx - jx.dot(z) * (verbatim ? jz : jy) - 2.0 * jx.dot(y) * jz;

    for (int nu = 1; nu <= 3; ++nu) {
        const Eigen::MatrixXd& Jn = s.J(nu);
        const GrassTangent jnx = Jn * x;
        const GrassTangent jny = Jn * y;
        const GrassTangent jnz = Jn * z;
        r += jny.dot(z) * jnx - jnx.dot(z) * (verbatim ? jnz : jny) - 2.0 * jnx.dot(y) * jnz;

        const GrassTangent jnjx = Jn * jx;
        const GrassTangent jnjy = Jn * jy;
        r += jnjy.dot(z) * jnjx - jnjx.dot(z) * jnjy;
    }
    return sign_value(sign) * r;
}

SelfAdjointOperator jacobi_operator_g2(const GrassTangent& xi, const StructureBundle& s, SpaceSign sign,
                                       TensorVariant variant) {
    require_unit(xi);
    const int n = s.dim();
    Eigen::MatrixXd m(n, n);
    for (int k = 0; k < n; ++k) {
        m.col(k) = curvature_g2(GrassTangent::Unit(n, k), xi, xi, s, sign, variant);
    }
    return SelfAdjointOperator(m);
}

namespace {

/// Unit vector perpendicular to c (unit), chosen from the least aligned axis.
Eigen::Vector3d perpendicular(const Eigen::Vector3d& c) {
    Eigen::Index axis = 0;
    c.cwiseAbs().minCoeff(&axis);
    Eigen::Vector3d e = Eigen::Vector3d::Unit(axis);
    e -= e.dot(c) * c;
    return e.normalized();
}

}  // namespace

AlphaDecomposition alpha_of(const GrassTangent& xi, const StructureBundle& s) {
    require_unit(xi);
    const GrassTangent jxi = s.J() * xi;

    Eigen::Vector3d w;
    GrassTangent proj = GrassTangent::Zero(xi.size());
    for (int nu = 1; nu <= 3; ++nu) {
        const GrassTangent jnxi = s.J(nu) * xi;
        w[nu - 1] = jxi.dot(jnxi);
        proj += w[nu - 1] * jnxi;
    }
    const GrassTangent rest = jxi - proj;
    const double cos_part = w.norm();
    const double sin_part = rest.norm();

    AlphaDecomposition dec;
    dec.alpha = std::atan2(sin_part, cos_part);
    dec.j1_coeffs = cos_part > kBoundaryTol ? Eigen::Vector3d(w / cos_part) : Eigen::Vector3d::UnitX();
    if (cos_part <= kBoundaryTol) dec.alpha = std::numbers::pi / 2;
    const Eigen::Vector3d e2 = perpendicular(dec.j1_coeffs);
    dec.basis.row(0) = dec.j1_coeffs.transpose();
    dec.basis.row(1) = e2.transpose();
    dec.basis.row(2) = dec.j1_coeffs.cross(e2).transpose();

    const Eigen::MatrixXd j1 = s.combination(dec.j1_coeffs);
    if (sin_part <= kBoundaryTol) {
        dec.alpha = 0.0;
        dec.reconstruction_residual = (jxi - j1 * xi).norm();
        return dec;
    }
    // J1^{-1} = -J1, and <J xi, J1 Z> = |rest| >= 0.
    GrassTangent z = -(j1 * rest) / sin_part;
    dec.reconstruction_residual =
        (jxi - std::cos(dec.alpha) * (j1 * xi) - std::sin(dec.alpha) * (j1 * z)).norm();
    dec.z = std::move(z);
    return dec;
}

GrassTangent xi_with_alpha(double alpha, const StructureBundle& s) {
    if (s.m() < 2) throw InvalidArgument("xi_with_alpha needs m >= 2");
    GrassTangent xi = GrassTangent::Zero(s.dim());
    xi[0] = std::cos(alpha / 2);
    xi[6] = std::sin(alpha / 2);  // slot 1, j component
    return xi;
}

HopfPair hopf_eigenvectors(const AlphaDecomposition& dec, const GrassTangent& xi, const StructureBundle& s) {
    if (!dec.z || dec.alpha <= kBoundaryTol || dec.alpha >= std::numbers::pi / 2 - kBoundaryTol) {
        throw BoundaryError("X1/X2 eigenstructure requires 0 < alpha < pi/2");
    }
    const Eigen::MatrixXd j1 = s.combination(dec.j1_coeffs);
    const GrassTangent u = j1 * xi;
    const GrassTangent v = j1 * (*dec.z);
    const double b = dec.alpha / 2;
    return {std::cos(b) * u + std::sin(b) * v, std::sin(b) * u - std::cos(b) * v};
}

HopfEigenvalues hopf_eigenvalues(const HopfPair& pair, const SelfAdjointOperator& k) {
    HopfEigenvalues out;
    const GrassTangent k1 = k.apply(pair.x1);
    const GrassTangent k2 = k.apply(pair.x2);
    out.mu1 = pair.x1.dot(k1) / pair.x1.squaredNorm();
    out.mu2 = pair.x2.dot(k2) / pair.x2.squaredNorm();
    out.residual1 = (k1 - out.mu1 * pair.x1).norm();
    out.residual2 = (k2 - out.mu2 * pair.x2).norm();
    const Spectrum spec = decompose(k);
    if (const auto* g = spec.find(out.mu1)) out.multiplicity1 = g->multiplicity;
    if (const auto* g = spec.find(out.mu2)) out.multiplicity2 = g->multiplicity;
    return out;
}

ShapeResiduals shape_consistency(double lambda1, double lambda2, double a_jj, double a_zz, double alpha) {
    const double b = alpha / 2;
    const double cot2 = std::pow(std::cos(b) / std::sin(b), 2);
    const double tan2 = std::pow(std::sin(b) / std::cos(b), 2);

    ShapeResiduals r;
    r.equality_branch = std::abs(std::cos(b) - std::sin(b)) <= kBoundaryTol;
    if (r.equality_branch) {
        r.first = a_zz - a_jj;
        r.second = a_zz - (2.0 * lambda2 + a_jj);
        r.forced_lambda2 = 0.0;
        return r;
    }
    r.first = a_zz - (lambda1 * (1.0 - cot2) + cot2 * a_jj);
    r.second = a_zz - (lambda2 * (1.0 + tan2) + tan2 * a_jj);
    return r;
}

std::pair<double, double> solve_shape_entries(double lambda1, double lambda2, double alpha) {
    const double b = alpha / 2;
    if (std::abs(std::cos(b) - std::sin(b)) <= kBoundaryTol) {
        throw BoundaryError("shape relations are singular when cos(beta) = sin(beta)");
    }
    const double cot2 = std::pow(std::cos(b) / std::sin(b), 2);
    const double tan2 = std::pow(std::sin(b) / std::cos(b), 2);
    const double a_jj = (lambda1 * (1.0 - cot2) - lambda2 * (1.0 + tan2)) / (tan2 - cot2);
    const double a_zz = lambda2 * (1.0 + tan2) + tan2 * a_jj;
    return {a_jj, a_zz};
}

std::pair<double, double> eigen_shape_entries(double lambda1, double lambda2, double alpha) {
    const double c2 = std::pow(std::cos(alpha / 2), 2);
    const double s2 = std::pow(std::sin(alpha / 2), 2);
    return {c2 * lambda1 + s2 * lambda2, s2 * lambda1 + c2 * lambda2};
}

}  // namespace curvadapt::g2
