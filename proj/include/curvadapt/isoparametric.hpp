#pragma once

// Mean-curvature profiles of principal-curvature systems, the pole-stripping
// equivalence oracle, Newton-identity recovery and the power-sum cascade.
//
// A profile is t -> sum_i m_i lambda_i(t) with every branch continued
// analytically past its poles (kappa cot(theta - kappa t) is pi/kappa periodic),
// so it is defined on the whole line minus a discrete pole set.  Every pole is
// simple with residue -m_i.

#include "curvadapt/certificate.hpp"
#include "curvadapt/tube_flow.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvadapt::iso {

struct ProfileSystem {
    tube::PCSystem system;
    std::string label;
};

struct Window {
    double lo = 0.0;
    double hi = 0.0;
};

/// Analytic continuation of evolve(b, t).  Throws FocalPointError within 1e-14 of a pole.
double branch_value(const tube::CurvatureBranch& b, double t);

/// sum_i m_i branch_value(b_i, t).
double profile(const ProfileSystem& sys, double t);

struct Pole {
    double location = 0.0;
    int weight = 0;       ///< sum of multiplicities of the branches blowing up here
    double kappa = 0.0;   ///< frequency of the first contributing branch
};

struct PoleData {
    std::vector<Pole> poles;  ///< strictly increasing locations
};

/// All poles in (lo, hi); poles closer than `merge_tol` are merged with weights added.
PoleData extract_poles(const ProfileSystem& sys, Window w, double merge_tol = 1e-9);

struct EquivalenceOptions {
    double pole_tol = 1e-9;
    double residual_tol = 1e-9;   ///< relative: |Hp - Hq| / max(1, |Hp|, |Hq|)
    int grid_points = 256;
};

struct PoleWitness {
    double location = 0.0;
    int weight_p = 0;   ///< 0 when p has no pole there
    int weight_q = 0;
};

struct Certificate {
    Verdict verdict = Verdict::equivalent;
    double residual = 0.0;               ///< smooth-part residual on the grid
    std::optional<PoleWitness> witness;  ///< first mismatching pole, innermost first
    int poles_matched = 0;
    bool multiset_equal = false;         ///< cross-check: branch multisets coincide
    bool grid_equal = false;             ///< brute-force comparison of profile values
    Window window;
    std::string note;
};

/// Default window: a full period (0, pi / kappa_min) shifted so no pole sits on an
/// endpoint, widened to contain every coth / flat pole.
Window default_window(const ProfileSystem& p, const ProfileSystem& q);

/// Pole stripping: innermost pole first, compare location and weight, strip, repeat;
/// then the profiles must agree on a pole-avoiding grid.  Throws UnsupportedRegimeError
/// for tanh branches (|lambda| < kappa in the noncompact case).
Certificate profiles_equivalent(const ProfileSystem& p, const ProfileSystem& q,
                                std::optional<Window> window = std::nullopt,
                                const EquivalenceOptions& opt = {});

/// Branch multisets {(kappa, theta mod pi, m)} (initial value in place of theta for
/// noncompact and flat branches; zero flat branches ignored).
bool same_branch_multiset(const ProfileSystem& p, const ProfileSystem& q, double tol = 1e-9);

/// Profile values compared on the grid only, with no pole analysis.
bool grid_profiles_equal(const ProfileSystem& p, const ProfileSystem& q, Window w,
                         const EquivalenceOptions& opt = {});

/// Every member compared with the first.  With `kappa_constant`, members whose K
/// eigenvalue data (kappa with multiplicity) differ yield a contradiction verdict.
Certificate isoparametric_verdict(const std::vector<ProfileSystem>& family, bool kappa_constant);

/// Real multiset of size n with power sums p_1..p_n: polynomial roots, clustered and
/// polished by Gauss-Newton on the power sums.  Throws InconsistentPowerSumsError
/// when the roots are complex beyond 1e-8 or do not reproduce the power sums.
std::vector<double> newton_recover(const std::vector<double>& power_sums, int n);

/// p_k = sum_i m_i lambda_i^k for k = 1..kmax.
std::vector<double> power_sums(const ProfileSystem& sys, int kmax, double t);

struct CascadeResult {
    std::vector<double> power_sums;   ///< p_1..p_{kmax+1} at t
    std::vector<double> derivative;   ///< five-point differences of p_1..p_kmax
    std::vector<double> predicted;    ///< k (p_{k+1} + sum_i m_i s_i kappa_i^2 lambda_i^{k-1})
    std::vector<double> residuals;    ///< |derivative - predicted| / max(1, |predicted|)
};

/// Checks p_k' = k (p_{k+1} + sum_i m_i s_i kappa_i^2 lambda_i^{k-1}) for k = 1..kmax.
/// The difference step is min(h, d / 1000), d the distance from t to the nearest pole.
CascadeResult power_sum_cascade(const ProfileSystem& sys, int kmax, double t, double h = 1e-3);

/// theta reduced to (-pi/2, pi/2] modulo pi.
double reduced_phase(double theta);

/// First t in (0, t_max] (scanned on `samples` points) where the reduced phases of
/// kappa_p (r - t) and kappa_q (r - t) have opposite signs.
std::optional<double> phase_sign_split(double kappa_p, double kappa_q, double r, double t_max,
                                       int samples = 4096, bool reduce = true);

}  // namespace curvadapt::iso
