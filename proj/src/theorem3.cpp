#include "curvadapt/theorem3.hpp"

#include "curvadapt/errors.hpp"
#include "curvadapt/grassmannian.hpp"
#include "curvadapt/sweep.hpp"
#include "curvadapt/tube_flow.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace curvadapt::tube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kExcludedTol = 1e-9;
constexpr int kMaxSimplexSteps = 2000;
constexpr double kPenalty = 1e30;

/// lambda' = lambda^2 + mu from lambda(0) = lambda0; compact flows use the closed form directly.
struct Flow {
    bool compact = false;
    double kappa = 0.0;
    double theta = 0.0;
    CurvatureBranch branch;

    double operator()(double t) const {
        return compact ? kappa / std::tan(theta - kappa * t) : evolve(branch, t);
    }
};

/// False when the flow has a pole in [0, window].
bool make_flow(double mu, double lambda0, double window, Flow& f) {
    if (mu > 0.0) {
        f.compact = true;
        f.kappa = std::sqrt(mu);
        f.theta = std::atan2(f.kappa, lambda0);
        return f.theta - f.kappa * window > 0.0;
    }
    f.branch = CurvatureBranch::from_value(std::sqrt(-mu), mu < 0.0 ? -1 : 0, lambda0);
    return focal_radius(f.branch) > window;
}

std::optional<double> fixed_slope(Constraint c, double alpha) {
    const double b = alpha / 2;
    const double p = std::pow(std::cos(b) / std::sin(b), 2);
    const double q = std::pow(std::sin(b) / std::cos(b), 2);
    const double a = 1.0 - p;
    const double bb = 1.0 + q;
    switch (c) {
        case Constraint::ajj: return bb / a;
        case Constraint::azz: return p * bb / (q * a);
        case Constraint::ratio: return std::nullopt;
    }
    return std::nullopt;
}

struct Candidate {
    double p = 0.0;
    double l2 = 0.0;
    double residual = kInf;
};

struct SimplexData {
    const RelationProblem* prob;
    double range;
};

double simplex_objective(const gsl_vector* v, void* params) {
    const auto* data = static_cast<const SimplexData*>(params);
    const double p = gsl_vector_get(v, 0);
    const double l2 = gsl_vector_get(v, 1);
    if (std::abs(p) > data->range || std::abs(l2) > data->range) return kPenalty;
    const double r = relation_residual(*data->prob, p, l2);
    return std::isfinite(r) ? r : kPenalty;
}

/// Nelder-Mead from `start` inside [-range, range]^2.
Candidate simplex_search(const RelationProblem& prob, Candidate start, double step, double tol, double range) {
    gsl_set_error_handler_off();
    SimplexData data{&prob, range};
    gsl_multimin_function fn{&simplex_objective, 2, &data};
    gsl_vector* x = gsl_vector_alloc(2);
    gsl_vector* ss = gsl_vector_alloc(2);
    gsl_vector_set(x, 0, start.p);
    gsl_vector_set(x, 1, start.l2);
    gsl_vector_set_all(ss, step);
    gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
    gsl_multimin_fminimizer_set(m, &fn, x, ss);
    for (int it = 0; it < kMaxSimplexSteps; ++it) {
        if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), tol) == GSL_SUCCESS) break;
    }
    const double p = gsl_vector_get(m->x, 0);
    const double l2 = gsl_vector_get(m->x, 1);
    const double r = relation_residual(prob, p, l2);
    gsl_multimin_fminimizer_free(m);
    gsl_vector_free(ss);
    gsl_vector_free(x);
    if (std::abs(p) <= range && std::abs(l2) <= range && r < start.residual) return {p, l2, r};
    return start;
}

struct Eigenpair {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double residual = 0.0;
};

double apply_sign(double mu, RiccatiSign s) { return s == RiccatiSign::verbatim ? -mu : mu; }

}  // namespace

const char* constraint_name(Constraint c) {
    switch (c) {
        case Constraint::ajj: return "ajj";
        case Constraint::azz: return "azz";
        case Constraint::ratio: return "ratio";
    }
    return "?";
}

Constraint parse_constraint(const std::string& s) {
    if (s == "ajj" || s == "a_jj_const") return Constraint::ajj;
    if (s == "azz" || s == "a_zz_const") return Constraint::azz;
    if (s == "ratio" || s == "ratio_const") return Constraint::ratio;
    throw InvalidArgument("unknown constraint '" + s + "' (expected ajj, azz or ratio)");
}

const char* riccati_sign_name(RiccatiSign s) { return s == RiccatiSign::computed ? "computed" : "verbatim"; }

const char* residual_kind_name(ResidualKind k) { return k == ResidualKind::equation ? "equation" : "trajectory"; }

ResidualKind parse_residual_kind(const std::string& s) {
    if (s == "equation") return ResidualKind::equation;
    if (s == "trajectory") return ResidualKind::trajectory;
    throw InvalidArgument("unknown residual kind '" + s + "' (expected equation or trajectory)");
}

double relation_residual(const RelationProblem& prob, double p, double lambda2_0) {
    const double c = prob.fixed_c ? *prob.fixed_c : p;
    const double d = prob.fixed_c ? p : 0.0;
    Flow f2;
    if (!make_flow(prob.mu2, lambda2_0, prob.window, f2)) return kInf;
    Flow f1;
    const bool trajectory = prob.kind == ResidualKind::trajectory;
    if (trajectory && !make_flow(prob.mu1, c * lambda2_0 + d, prob.window, f1)) return kInf;
    double worst = 0.0;
    const int n = std::max(prob.t_points, 2);
    for (int k = 0; k < n; ++k) {
        const double t = prob.window * k / (n - 1);
        const double l2 = f2(t);
        double r = 0.0;
        if (trajectory) {
            r = std::abs(f1(t) - c * l2 - d);
        } else {
            const double l1 = c * l2 + d;
            r = std::abs(c * (l2 * l2 + prob.mu2) - (l1 * l1 + prob.mu1));
        }
        if (!std::isfinite(r)) return kInf;
        worst = std::max(worst, r);
    }
    return worst;
}

void check_alpha(double alpha) {
    const double c = std::cos(alpha);
    for (const double e : {0.0, 0.6, 0.8, 1.0}) {
        if (std::abs(c - e) <= kExcludedTol) throw ExcludedAngleError(alpha, e);
    }
    if (!(alpha >= 0.0 && alpha <= kPi / 2)) throw InvalidArgument("alpha must lie in [0, pi/2]");
}

std::vector<double> parse_alpha_grid(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw InvalidArgument("alpha grid must be a:b:n, got '" + spec + "'");
    double a = 0.0;
    double b = 0.0;
    int n = 0;
    try {
        std::size_t pos = 0;
        a = std::stod(parts[0], &pos);
        if (pos != parts[0].size()) throw InvalidArgument("");
        b = std::stod(parts[1], &pos);
        if (pos != parts[1].size()) throw InvalidArgument("");
        n = std::stoi(parts[2], &pos);
        if (pos != parts[2].size()) throw InvalidArgument("");
    } catch (const std::exception&) {
        throw InvalidArgument("alpha grid must be a:b:n with numeric fields, got '" + spec + "'");
    }
    if (n < 1) throw InvalidArgument("alpha grid needs n >= 1");
    const sweep::GridSpec g{n, a, b};
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(g.at(i));
    return out;
}

AlphaResult theorem3_point(double alpha, const SweepOptions& opt) {
    check_alpha(alpha);
    const auto bundle = g2::StructureBundle::quaternionic_model(opt.m);
    const auto xi = g2::xi_with_alpha(alpha, bundle);
    const auto dec = g2::alpha_of(xi, bundle);
    const auto pair = g2::hopf_eigenvectors(dec, xi, bundle);
    const auto k = g2::jacobi_operator_g2(xi, bundle, opt.space);
    const auto ev = g2::hopf_eigenvalues(pair, k);

    AlphaResult res;
    res.alpha = alpha;
    res.cos_alpha = std::cos(alpha);
    res.mu1 = ev.mu1;
    res.mu2 = ev.mu2;
    res.eigen_residual = std::max(ev.residual1, ev.residual2);
    res.ratio = ev.mu1 / ev.mu2;
    res.ratio_expected = (1.0 + res.cos_alpha) / (1.0 - res.cos_alpha);
    res.ratio_error = std::abs(res.ratio - res.ratio_expected);
    res.scale1 = std::abs(ev.mu1) / (1.0 + res.cos_alpha);
    res.scale2 = std::abs(ev.mu2) / (1.0 - res.cos_alpha);
    res.fixed_c = fixed_slope(opt.constraint, alpha);

    RelationProblem prob;
    prob.mu1 = apply_sign(ev.mu1, opt.sign);
    prob.mu2 = apply_sign(ev.mu2, opt.sign);
    prob.fixed_c = res.fixed_c;
    prob.t_points = opt.t_points;
    prob.kind = opt.kind;
    prob.window = kPi / (8.0 * std::sqrt(std::max(std::abs(prob.mu1), std::abs(prob.mu2))));
    res.window = prob.window;

    const sweep::GridSpec grid{opt.grid, -opt.range, opt.range};
    const std::vector<double> values =
        opt.parallel ? sweep::residual_grid_parallel(prob, grid) : sweep::residual_grid_serial(prob, grid);

    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto starts = std::min<std::size_t>(static_cast<std::size_t>(std::max(opt.refine_starts, 1)), order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts), order.end(),
                      [&](std::size_t a, std::size_t b) { return values[a] < values[b] || (values[a] == values[b] && a < b); });

    Candidate best;
    for (std::size_t s = 0; s < starts; ++s) {
        const std::size_t idx = order[s];
        if (!std::isfinite(values[idx])) break;
        const auto n = static_cast<std::size_t>(grid.n);
        Candidate start{grid.at(static_cast<int>(idx / n)), grid.at(static_cast<int>(idx % n)), values[idx]};
        const Candidate c = simplex_search(prob, start, grid.spacing(), opt.refine_tol, opt.range);
        if (c.residual < best.residual) best = c;
    }
    res.min_residual = best.residual;
    res.best_lambda2_0 = best.l2;
    res.best_c = res.fixed_c ? *res.fixed_c : best.p;
    res.best_d = res.fixed_c ? best.p : 0.0;
    return res;
}

Theorem3Certificate theorem3_sweep(const std::vector<double>& alpha_grid, const SweepOptions& opt) {
    if (alpha_grid.empty()) throw InvalidArgument("alpha grid is empty");
    for (const double a : alpha_grid) check_alpha(a);

    Theorem3Certificate cert;
    cert.constraint = opt.constraint;
    cert.sign = opt.sign;
    cert.kind = opt.kind;
    cert.floor_threshold = opt.floor_threshold;
    cert.range = opt.range;
    cert.residual_floor = kInf;
    for (const double a : alpha_grid) {
        AlphaResult r = theorem3_point(a, opt);
        if (r.min_residual < cert.residual_floor) {
            cert.residual_floor = r.min_residual;
            cert.floor_alpha = a;
        }
        cert.max_ratio_error = std::max(cert.max_ratio_error, r.ratio_error);
        cert.points.push_back(std::move(r));
    }
    cert.verdict = cert.residual_floor >= opt.floor_threshold ? Verdict::contradiction : Verdict::equivalent;
    return cert;
}

EqualityBranchResult theorem3_equality_branch(const SweepOptions& opt) {
    const double alpha = kPi / 2;
    const auto bundle = g2::StructureBundle::quaternionic_model(opt.m);
    const auto xi = g2::xi_with_alpha(alpha, bundle);
    const auto dec = g2::alpha_of(xi, bundle);
    if (!dec.z) throw BoundaryError("alpha = pi/2 normal has no Z component");
    const Eigen::MatrixXd j1 = bundle.combination(dec.j1_coeffs);
    const double b = alpha / 2;
    const Eigen::VectorXd x2 = std::sin(b) * (j1 * xi) - std::cos(b) * (j1 * *dec.z);
    const auto k = g2::jacobi_operator_g2(xi, bundle, opt.space);
    const Eigen::VectorXd kx2 = k.apply(x2);

    EqualityBranchResult res;
    res.alpha = alpha;
    res.mu2 = apply_sign(x2.dot(kx2) / x2.squaredNorm(), opt.sign);
    res.eigen_residual = (kx2 - (x2.dot(kx2) / x2.squaredNorm()) * x2).norm();
    res.forced_lambda2 = 0.0;
    // lambda2 = 0 identically gives lambda2' = 0, while the flow demands 0^2 + mu2.
    res.riccati_residual = std::abs(res.mu2);
    res.verdict = res.riccati_residual >= opt.floor_threshold ? Verdict::contradiction : Verdict::equivalent;
    return res;
}

}  // namespace curvadapt::tube
