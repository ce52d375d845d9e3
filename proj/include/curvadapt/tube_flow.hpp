#pragma once

// Principal-curvature flow along a normal geodesic of a curvature-adapted
// hypersurface.  Each simultaneous eigenline of (A_xi, K_xi) evolves by the
// scalar Riccati equation
//
//     lambda'(t) = lambda(t)^2 + sign * kappa^2
//
// whose closed-form solutions are kappa cot(theta - kappa t) (compact),
// kappa coth / kappa tanh / constant (noncompact) and 1 / (r - t) (flat).

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace curvadapt::tube {

enum class Regime { cot, coth, tanh, constant, flat_pole, flat_zero };

const char* regime_name(Regime r);

struct CurvatureBranch {
    double kappa = 0.0;  ///< Jacobi frequency, sqrt(|K eigenvalue|)
    int space_sign = 1;  ///< +1 compact, 0 flat, -1 noncompact
    /// theta with lambda = kappa cot(theta), theta in (0, pi), for compact branches;
    /// the initial value lambda(0) otherwise.
    double phase = 0.0;
    int multiplicity = 1;
    std::string tag;  ///< optional row label ("lambda1", "alpha2", ...)

    static CurvatureBranch compact(double kappa, double theta, int multiplicity = 1, std::string tag = {});
    /// Branch with lambda(0) = value; for compact branches theta = arccot(value / kappa).
    static CurvatureBranch from_value(double kappa, int space_sign, double value, int multiplicity = 1,
                                      std::string tag = {});

    Regime regime() const;
    double initial_value() const;
};

/// Largest interval (lo, hi) containing 0 on which the branch is pole free.
std::pair<double, double> regularity_interval(const CurvatureBranch& b);

/// lambda(t).  Throws FocalPointError when t is at or beyond a pole.
double evolve(const CurvatureBranch& b, double t);

/// Smallest t > 0 where evolve blows up, +infinity if none.
double focal_radius(const CurvatureBranch& b);

/// The branch re-based at parameter s: evolve(shift(b, s), t) == evolve(b, s + t).
CurvatureBranch shift(const CurvatureBranch& b, double s);

struct PCSystem {
    std::vector<CurvatureBranch> branches;
    std::optional<int> dimension;  ///< declared hypersurface dimension, if any

    int total_multiplicity() const;
    /// Throws InvalidArgument if the multiplicities do not sum to `dimension`.
    void validate() const;
};

/// sum_i m_i lambda_i(t).  FocalPointError carries the offending branch index.
double mean_curvature(const PCSystem& sys, double t);

// Tubes in the Cayley plane and its dual --------------------------------------

enum class Ambient { op2, oh2 };
enum class Core { point, line, hp2, horosphere };
enum class Boundary { tangent, normal };

/// Principal curvature Y'(r)/Y(r) of a radius-r tube contributed by a Jacobi field
/// Y'' + kappa_sq Y = 0 with Y(0)=1, Y'(0)=0 (tangent) or Y(0)=0, Y'(0)=1 (normal).
/// kappa_sq < 0 gives the hyperbolic solutions.  Throws FocalPointError at a zero of Y.
double jacobi_tube_curvature(double kappa_sq, Boundary boundary, double r);

struct TubeDescriptor {
    Ambient ambient = Ambient::op2;
    Core core = Core::line;
    double radius = 0.0;  ///< ignored for horospheres
};

/// First focal distance of the core (infinity for the noncompact ambient).
double core_focal_distance(Ambient ambient, Core core);

/// Principal curvatures and multiplicities of the tube (the Proposition table rows).
/// Branches are oriented so that evolve(branch, t) is the curvature of the tube of radius r - t.
PCSystem tube_spectrum(const TubeDescriptor& d);

/// Radius in (lo, hi) where the tube's mean curvature vanishes (bisection).
double minimal_tube_radius(Ambient ambient, Core core, double lo, double hi, double tol = 1e-14);

const char* ambient_name(Ambient a);
const char* core_name(Core c);
Ambient parse_ambient(const std::string& s);
Core parse_core(const std::string& s);

}  // namespace curvadapt::tube
