#pragma once

// Tangent-space model of the Cayley plane OP^2 (compact) and its dual OH^2.
//
// T_p = O (+) O with <(a,b),(c,d)> = <a,c> + <b,d>.  The curvature tensor is
//
//   R((a,b),(c,d))(e,f) = +-1/4 ( 4<c,e>a - 4<a,e>c + (ed)b* - (eb)d* + (ad-cb)f*,
//                                 4<d,f>b - 4<b,f>d + a*(cf) - c*(af) - e*(ad-cb) )
//
// multiplied by kMetricScale so that sectional curvatures range over [1, 4]
// (compact) and [-4, -1] (noncompact).
//
// Sign convention: the normal Jacobi operator is K_xi(X) = R(X, xi) xi, so the
// compact space has a positive spectrum {4 (mult 7), 1 (mult 8)} on xi^perp.

#include "curvadapt/octonion.hpp"
#include "curvadapt/space_sign.hpp"
#include "curvadapt/spectrum.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace curvadapt::cayley {

inline constexpr int kDim = 16;

/// Global factor applied on top of the displayed +-1/4 prefactor.
inline constexpr double kMetricScale = 4.0;

/// `verbatim` reproduces e*(ad - bc) in the second component as printed; it
/// violates the curvature identities and exists only as a negative control.
enum class TensorVariant { corrected, verbatim };

struct TangentPair {
    Octonion first;
    Octonion second;

    Eigen::VectorXd to_vector() const;
    static TangentPair from_vector(const Eigen::VectorXd& v);
    static TangentPair basis(int k);  ///< k-th standard basis vector, 0 <= k < 16

    TangentPair& operator+=(const TangentPair& o) {
        first += o.first;
        second += o.second;
        return *this;
    }
    friend TangentPair operator+(TangentPair a, const TangentPair& b) { return a += b; }
    friend TangentPair operator-(const TangentPair& a, const TangentPair& b) {
        return {a.first - b.first, a.second - b.second};
    }
    friend TangentPair operator*(double s, const TangentPair& a) { return {s * a.first, s * a.second}; }
};

double inner(const TangentPair& x, const TangentPair& y);
double norm(const TangentPair& x);

/// R(x, y) z.
TangentPair curvature(const TangentPair& x, const TangentPair& y, const TangentPair& z, SpaceSign s,
                      TensorVariant variant = TensorVariant::corrected);

/// X -> R(X, xi) xi as a 16x16 operator.  Throws NormalizationError unless |xi| = 1 within 1e-12.
SelfAdjointOperator jacobi_operator(const TangentPair& xi, SpaceSign s,
                                    TensorVariant variant = TensorVariant::corrected);

/// <R(x,y)y, x> / (|x|^2 |y|^2 - <x,y>^2).  Throws DegeneratePlaneError when the Gram determinant is below 1e-14.
double sectional_curvature(const TangentPair& x, const TangentPair& y, SpaceSign s);

struct AdaptedFrame {
    TangentPair xi;
    std::vector<TangentPair> four_space;  ///< 7 vectors, K = 4 * sign
    std::vector<TangentPair> one_space;   ///< 8 vectors, K = 1 * sign
    double max_residual = 0.0;            ///< max |K v - mu v| over the frame
    double gram_error = 0.0;              ///< orthonormality error of frame + xi
};

AdaptedFrame adapted_frame(const TangentPair& xi, SpaceSign s);

/// Spectrum of the Jacobi operator (on all of T_p, so 0 appears with multiplicity 1).
Spectrum jacobi_spectrum(const TangentPair& xi, SpaceSign s, double gap = 1e-6);

// Totally geodesic subspaces ------------------------------------------------

/// A linear subspace of T_p given by orthonormal columns.
struct Subspace {
    std::string name;
    Eigen::MatrixXd basis;  ///< 16 x k
};

/// Candidate tangent spaces of totally geodesic submanifolds through p.
/// This is catalog data; which of them are curvature-adapted is computed.
std::vector<Subspace> totally_geodesic_candidates();

/// max |R(x,y)z - P R(x,y)z| over random x, y, z in V (zero for a Lie triple system).
double lie_triple_defect(const Subspace& v, SpaceSign s, int samples, unsigned long long seed);

struct NormalSplit {
    double invariance_defect = 0.0;  ///< |K V - P_V K V|; zero iff K_xi preserves V
    int four_dim = 0;                ///< dim(V cap E_4(xi))
    int one_dim = 0;                 ///< dim(V cap E_1(xi))
};

/// Decomposition of V under K_xi for a unit normal xi perpendicular to V.
NormalSplit normal_split(const Subspace& v, const TangentPair& xi, SpaceSign s);

struct CurvatureAdaptedCheck {
    std::string name;
    bool lie_triple = false;
    bool curvature_adapted = false;  ///< K_xi(V) in V with the same split for every sampled normal
    int four_dim = 0;
    int one_dim = 0;
    double max_defect = 0.0;
};

CurvatureAdaptedCheck check_curvature_adapted(const Subspace& v, SpaceSign s, int normals,
                                              unsigned long long seed);

}  // namespace curvadapt::cayley
