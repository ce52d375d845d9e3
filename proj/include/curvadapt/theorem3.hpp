#pragma once

// Non-existence sweep for Hopf hypersurfaces of G2(C^{m+2}) with constant
// principal curvatures.
//
// For xi with angle alpha, X1 and X2 are eigenvectors of K_xi with eigenvalues
// mu1, mu2 and of A_xi with eigenvalues lambda1, lambda2.  Along the normal
// geodesic lambda_i' = lambda_i^2 + mu_i.  Each constraint mode forces an affine
// relation lambda1 = c lambda2 + d:
//
//   ajj    a_jj constant:   c = B / A,           d free
//   azz    a_zz constant:   c = P B / (Q A),     d free
//   ratio  a_jj / a_zz const: c free,            d = 0
//
// with A = 1 - cot^2 b, B = 1 + tan^2 b, P = cot^2 b, Q = tan^2 b, b = alpha / 2.
// Substituting the relation into both Riccati equations leaves the
// overdetermined condition
//
//   c (lambda2^2 + mu2) = (c lambda2 + d)^2 + mu1
//
// along the lambda2 flow.  The residual of a candidate (c or d, lambda2(0)) is
// its maximum defect over a pole-free window; a positive floor over all
// candidates certifies that no such hypersurface exists.

#include "curvadapt/certificate.hpp"
#include "curvadapt/space_sign.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvadapt::tube {

enum class Constraint { ajj, azz, ratio };
/// `computed` uses K eigenvalues as computed; `verbatim` flips their sign as printed
/// ("lambda' = lambda^2 - 4(1 +- cos alpha)").
enum class RiccatiSign { computed, verbatim };
/// `equation`: defect of the substituted Riccati equation (default).
/// `trajectory`: max_t |lambda1(t) - c lambda2(t) - d| with lambda1(0) = c lambda2(0) + d.
enum class ResidualKind { equation, trajectory };

const char* constraint_name(Constraint c);
Constraint parse_constraint(const std::string& s);
const char* riccati_sign_name(RiccatiSign s);
const char* residual_kind_name(ResidualKind k);
ResidualKind parse_residual_kind(const std::string& s);

/// lambda1 = c lambda2 + d on [0, window] against lambda_i' = lambda_i^2 + mu_i.
struct RelationProblem {
    double mu1 = 0.0;
    double mu2 = 0.0;
    std::optional<double> fixed_c;  ///< set: search over d; unset: search over c with d = 0
    double window = 0.0;
    int t_points = 64;
    ResidualKind kind = ResidualKind::equation;
};

/// Residual for search parameter `p` (d if c is fixed, else c) and lambda2(0).
/// Infinite when a flow it uses has a pole in [0, window].
double relation_residual(const RelationProblem& prob, double p, double lambda2_0);

struct SweepOptions {
    Constraint constraint = Constraint::ajj;
    RiccatiSign sign = RiccatiSign::computed;
    SpaceSign space = SpaceSign::compact;
    int m = 2;
    int grid = 121;              ///< grid points per axis
    double range = 50.0;         ///< both parameters in [-range, range]
    int t_points = 64;
    ResidualKind kind = ResidualKind::equation;
    double refine_tol = 1e-8;    ///< simplex size at which refinement stops
    int refine_starts = 8;       ///< best grid points refined by Nelder-Mead
    double floor_threshold = 1e-3;
    bool parallel = true;
};

struct AlphaResult {
    double alpha = 0.0;
    double cos_alpha = 0.0;
    double mu1 = 0.0;                 ///< K_xi on X1, from the model tensor
    double mu2 = 0.0;
    double eigen_residual = 0.0;      ///< max |K X_i - mu_i X_i|
    double ratio = 0.0;               ///< mu1 / mu2
    double ratio_expected = 0.0;      ///< (1 + cos alpha) / (1 - cos alpha)
    double ratio_error = 0.0;
    double scale1 = 0.0;              ///< |mu1| / (1 + cos alpha)
    double scale2 = 0.0;              ///< |mu2| / (1 - cos alpha)
    std::optional<double> fixed_c;
    double best_c = 0.0;
    double best_d = 0.0;
    double best_lambda2_0 = 0.0;
    double min_residual = 0.0;
    double window = 0.0;
};

struct Theorem3Certificate {
    Verdict verdict = Verdict::contradiction;
    Constraint constraint = Constraint::ajj;
    RiccatiSign sign = RiccatiSign::computed;
    ResidualKind kind = ResidualKind::equation;
    double residual_floor = 0.0;      ///< min over the grid of the per-alpha minimal residual
    double floor_alpha = 0.0;         ///< alpha attaining the floor
    double floor_threshold = 0.0;
    double max_ratio_error = 0.0;
    double range = 0.0;
    std::vector<AlphaResult> points;
};

/// Throws ExcludedAngleError if cos(alpha) is within 1e-9 of {0, 3/5, 4/5, 1},
/// InvalidArgument if alpha is outside [0, pi/2].
void check_alpha(double alpha);

/// "a:b:n" -> n equally spaced angles from a to b inclusive.
std::vector<double> parse_alpha_grid(const std::string& spec);

AlphaResult theorem3_point(double alpha, const SweepOptions& opt);

/// verdict = contradiction iff every alpha has minimal residual >= floor_threshold.
Theorem3Certificate theorem3_sweep(const std::vector<double>& alpha_grid, const SweepOptions& opt);

/// The cos(beta) = sin(beta) case (alpha = pi/2): the shape relations force lambda2 = 0,
/// which the Riccati equation lambda2' = lambda2^2 + mu2 then contradicts unless mu2 = 0.
struct EqualityBranchResult {
    double alpha = 0.0;
    double mu2 = 0.0;
    double eigen_residual = 0.0;
    double forced_lambda2 = 0.0;
    double riccati_residual = 0.0;    ///< |lambda2' - (lambda2^2 + mu2)| with lambda2 = 0
    Verdict verdict = Verdict::contradiction;
};

EqualityBranchResult theorem3_equality_branch(const SweepOptions& opt);

}  // namespace curvadapt::tube
