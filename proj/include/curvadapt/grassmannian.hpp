#pragma once

// Tangent-space model of the complex two-plane Grassmannian G2(C^{m+2}).
//
// T_p = H^m viewed as R^{4m}, each quaternion slot stored as (re, i, j, k).
// J is left multiplication by i; J1, J2, J3 are right multiplications by
// i, j and -k, so that J1 J2 = J3 (cyclic) and J commutes with every J_nu.
//
// The curvature tensor is
//
//   R(X,Y)Z = <Y,Z>X - <X,Z>Y + <JY,Z>JX - <JX,Z>JY - 2<JX,Y>JZ
//           + sum_nu ( <J_nu Y,Z>J_nu X - <J_nu X,Z>J_nu Y - 2<J_nu X,Y>J_nu Z
//                    + <J_nu J Y,Z>J_nu J X - <J_nu J X,Z>J_nu J Y )
//
// and K_xi(X) = R(X, xi) xi, as for the Cayley plane.

#include "curvadapt/space_sign.hpp"
#include "curvadapt/spectrum.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>

namespace curvadapt::g2 {

using GrassTangent = Eigen::VectorXd;

/// `verbatim` uses JZ / J_nu Z in place of JY / J_nu Y in the second term of each
/// line, as printed; it breaks pair symmetry and is kept as a negative control.
enum class TensorVariant { corrected, verbatim };

struct BundleResiduals {
    double squares = 0.0;       ///< max |A^2 + Id| over J, J1, J2, J3
    double quaternion = 0.0;    ///< max |J1 J2 - J3| over cyclic permutations
    double commutation = 0.0;   ///< max |J J_nu - J_nu J|
    double isometry = 0.0;      ///< max |A^T A - Id|
    double max() const;
};

class StructureBundle {
public:
    /// The H^m model described above; m >= 1.
    static StructureBundle quaternionic_model(int m);

    /// Same J, with (J1, J2, J3) replaced by sum_b rot(a, b) J_b for rot in SO(3).
    StructureBundle rotated(const Eigen::Matrix3d& rot) const;

    int m() const { return m_; }
    int dim() const { return 4 * m_; }
    const Eigen::MatrixXd& J() const { return j_; }
    const Eigen::MatrixXd& J(int nu) const { return jq_[static_cast<std::size_t>(nu - 1)]; }  ///< nu = 1, 2, 3
    Eigen::MatrixXd combination(const Eigen::Vector3d& coeffs) const;

    BundleResiduals verify() const;

private:
    StructureBundle(int m, Eigen::MatrixXd j, std::array<Eigen::MatrixXd, 3> jq)
        : m_(m), j_(std::move(j)), jq_(std::move(jq)) {}

    int m_;
    Eigen::MatrixXd j_;
    std::array<Eigen::MatrixXd, 3> jq_;
};

GrassTangent curvature_g2(const GrassTangent& x, const GrassTangent& y, const GrassTangent& z,
                          const StructureBundle& s, SpaceSign sign = SpaceSign::compact,
                          TensorVariant variant = TensorVariant::corrected);

/// Throws NormalizationError unless |xi| = 1 within 1e-12.
SelfAdjointOperator jacobi_operator_g2(const GrassTangent& xi, const StructureBundle& s,
                                       SpaceSign sign = SpaceSign::compact,
                                       TensorVariant variant = TensorVariant::corrected);

/// J xi = cos(alpha) J1 xi + sin(alpha) J1 Z with Z perpendicular to H xi.
struct AlphaDecomposition {
    double alpha = 0.0;                    ///< in [0, pi/2]
    Eigen::Vector3d j1_coeffs;             ///< J1 = sum_nu j1_coeffs[nu] J_nu (unit)
    Eigen::Matrix3d basis;                 ///< rows: coefficients of the rotated (J1, J2, J3)
    std::optional<GrassTangent> z;         ///< empty when alpha = 0
    double reconstruction_residual = 0.0;  ///< |J xi - cos a J1 xi - sin a J1 Z|
};

/// J1 and Z are fixed deterministically: <J xi, J1 Z> >= 0, and J1 is the
/// canonical J1 when alpha = pi/2.
AlphaDecomposition alpha_of(const GrassTangent& xi, const StructureBundle& s);

/// Unit xi in the first two quaternion slots with alpha(xi) = alpha:
/// xi = (cos(alpha/2), sin(alpha/2) j, 0, ...).
GrassTangent xi_with_alpha(double alpha, const StructureBundle& s);

struct HopfPair {
    GrassTangent x1;
    GrassTangent x2;
};

/// X1 = cos(beta) J1 xi + sin(beta) J1 Z, X2 = sin(beta) J1 xi - cos(beta) J1 Z, beta = alpha/2.
/// Throws BoundaryError for alpha in {0, pi/2}.
HopfPair hopf_eigenvectors(const AlphaDecomposition& dec, const GrassTangent& xi, const StructureBundle& s);

struct HopfEigenvalues {
    double mu1 = 0.0;  ///< Rayleigh quotient of K_xi on X1
    double mu2 = 0.0;
    double residual1 = 0.0;  ///< |K X1 - mu1 X1|
    double residual2 = 0.0;
    int multiplicity1 = 0;   ///< multiplicity of mu1 in the spectrum of K_xi
    int multiplicity2 = 0;
};

HopfEigenvalues hopf_eigenvalues(const HopfPair& pair, const SelfAdjointOperator& k);

// Shape-operator compatibility ----------------------------------------------

/// Residuals of the two linear relations between the eigenvalues lambda1, lambda2
/// of A on X1, X2 and the diagonal entries a_jj = <A J1 xi, J1 xi>, a_zz = <A J1 Z, J1 Z>:
///
///   a_zz = lambda1 (1 - cot^2 b) + cot^2 b a_jj          (first)
///   a_zz = lambda2 (1 + tan^2 b) + tan^2 b a_jj          (second)
///
/// with b = alpha/2.  When cos b = sin b the first relation loses its lambda1
/// term and together with the second forces lambda2 = 0.
struct ShapeResiduals {
    double first = 0.0;
    double second = 0.0;
    bool equality_branch = false;
    std::optional<double> forced_lambda2;  ///< set on the equality branch
};

ShapeResiduals shape_consistency(double lambda1, double lambda2, double a_jj, double a_zz, double alpha);

/// (a_jj, a_zz) satisfying both relations exactly.  Throws BoundaryError on the equality branch.
std::pair<double, double> solve_shape_entries(double lambda1, double lambda2, double alpha);

/// (a_jj, a_zz) of an operator that has X1, X2 as eigenvectors with eigenvalues lambda1, lambda2,
/// obtained by expanding J1 xi and J1 Z in the (X1, X2) basis.
std::pair<double, double> eigen_shape_entries(double lambda1, double lambda2, double alpha);

}  // namespace curvadapt::g2
