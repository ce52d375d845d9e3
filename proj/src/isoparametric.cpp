#include "curvadapt/isoparametric.hpp"

#include "curvadapt/errors.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <tuple>

namespace curvadapt::iso {

namespace {

using tube::CurvatureBranch;
using tube::Regime;

constexpr double kPi = std::numbers::pi;
constexpr double kPoleEval = 1e-14;
constexpr double kPoleGuard = 1e-6;
constexpr double kImagTol = 1e-8;

void require_supported(const ProfileSystem& s) {
    for (std::size_t i = 0; i < s.system.branches.size(); ++i) {
        if (s.system.branches[i].regime() == Regime::tanh) {
            throw UnsupportedRegimeError("branch " + std::to_string(i) + " of system '" + s.label +
                                         "' is in the tanh regime (|lambda| < kappa); the pole-stripping "
                                         "oracle requires |lambda| >= kappa");
        }
    }
}

/// Poles of one branch inside (lo, hi).
void branch_poles(const CurvatureBranch& b, Window w, std::vector<Pole>& out) {
    switch (b.regime()) {
        case Regime::cot: {
            // theta - kappa t = n pi.
            const auto n_lo = static_cast<long>(std::ceil((b.phase - b.kappa * w.hi) / kPi));
            const auto n_hi = static_cast<long>(std::floor((b.phase - b.kappa * w.lo) / kPi));
            for (long n = n_hi; n >= n_lo; --n) {
                const double t = (b.phase - static_cast<double>(n) * kPi) / b.kappa;
                if (t > w.lo && t < w.hi) out.push_back({t, b.multiplicity, b.kappa});
            }
            break;
        }
        case Regime::coth: {
            const double t = std::atanh(b.kappa / b.phase) / b.kappa;
            if (t > w.lo && t < w.hi) out.push_back({t, b.multiplicity, b.kappa});
            break;
        }
        case Regime::flat_pole: {
            const double t = 1.0 / b.phase;
            if (t > w.lo && t < w.hi) out.push_back({t, b.multiplicity, b.kappa});
            break;
        }
        case Regime::tanh:
        case Regime::constant:
        case Regime::flat_zero:
            break;
    }
}

std::vector<double> all_pole_locations(const ProfileSystem& p, const ProfileSystem& q, Window w) {
    std::vector<double> out;
    for (const auto* s : {&p, &q}) {
        for (const auto& pole : extract_poles(*s, w).poles) out.push_back(pole.location);
    }
    return out;
}

bool near_any(double t, const std::vector<double>& poles, double guard) {
    return std::any_of(poles.begin(), poles.end(), [&](double x) { return std::abs(x - t) < guard; });
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

/// Max relative profile gap over grid points offset by `phase` in each cell, skipping
/// points within `guard` of a listed pole and points where either profile is singular.
double grid_gap(const ProfileSystem& p, const ProfileSystem& q, Window w, int n, double phase,
                const std::vector<double>& poles, double guard) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = w.lo + (i + phase) * (w.hi - w.lo) / n;
        if (near_any(t, poles, guard)) continue;
        try {
            worst = std::max(worst, relative_gap(profile(p, t), profile(q, t)));
        } catch (const FocalPointError&) {
        }
    }
    return worst;
}

struct BranchKey {
    int cls = 0;  // 0 compact, 1 noncompact, 2 flat
    double kappa = 0.0;
    double value = 0.0;
    int multiplicity = 0;
};

std::vector<BranchKey> canonical_keys(const ProfileSystem& s, double tol) {
    std::vector<BranchKey> keys;
    for (const auto& b : s.system.branches) {
        const Regime r = b.regime();
        if (r == Regime::flat_zero) continue;
        BranchKey k;
        k.kappa = b.kappa;
        k.multiplicity = b.multiplicity;
        if (r == Regime::cot) {
            double th = std::fmod(b.phase, kPi);
            if (th < 0.0) th += kPi;
            if (th > kPi - tol) th -= kPi;
            k.value = th;
        } else {
            k.cls = (r == Regime::flat_pole) ? 2 : 1;
            k.value = b.phase;
        }
        keys.push_back(k);
    }
    std::sort(keys.begin(), keys.end(), [](const BranchKey& a, const BranchKey& b) {
        return std::tie(a.cls, a.kappa, a.value) < std::tie(b.cls, b.kappa, b.value);
    });
    std::vector<BranchKey> merged;
    for (const auto& k : keys) {
        if (!merged.empty() && merged.back().cls == k.cls && std::abs(merged.back().kappa - k.kappa) <= tol &&
            std::abs(merged.back().value - k.value) <= tol) {
            merged.back().multiplicity += k.multiplicity;
        } else {
            merged.push_back(k);
        }
    }
    return merged;
}

std::vector<std::pair<double, int>> kappa_data(const ProfileSystem& s) {
    std::vector<std::pair<double, int>> out;
    for (const auto& b : s.system.branches) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) {
            return std::abs(e.first - b.space_sign * b.kappa * b.kappa) <= 1e-9;
        });
        if (it == out.end()) out.emplace_back(b.space_sign * b.kappa * b.kappa, b.multiplicity);
        else it->second += b.multiplicity;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

double branch_value(const CurvatureBranch& b, double t) {
    switch (b.regime()) {
        case Regime::cot: {
            const double x = b.phase - b.kappa * t;
            const double d = x - kPi * std::round(x / kPi);
            if (std::abs(d) < kPoleEval) throw FocalPointError("profile evaluated at a pole", t);
            return b.kappa / std::tan(x);
        }
        case Regime::coth: {
            const double x = std::atanh(b.kappa / b.phase) - b.kappa * t;
            if (std::abs(x) < kPoleEval) throw FocalPointError("profile evaluated at a pole", t);
            return b.kappa / std::tanh(x);
        }
        case Regime::tanh:
            return b.kappa * std::tanh(std::atanh(b.phase / b.kappa) - b.kappa * t);
        case Regime::constant:
            return b.phase;
        case Regime::flat_pole: {
            const double den = 1.0 - b.phase * t;
            if (std::abs(den) < kPoleEval) throw FocalPointError("profile evaluated at a pole", t);
            return b.phase / den;
        }
        case Regime::flat_zero:
            return 0.0;
    }
    return 0.0;
}

double profile(const ProfileSystem& sys, double t) {
    double h = 0.0;
    for (std::size_t i = 0; i < sys.system.branches.size(); ++i) {
        const auto& b = sys.system.branches[i];
        try {
            h += b.multiplicity * branch_value(b, t);
        } catch (const FocalPointError& e) {
            throw FocalPointError("branch " + std::to_string(i) + " has a pole", e.focal_radius(),
                                  static_cast<int>(i));
        }
    }
    return h;
}

PoleData extract_poles(const ProfileSystem& sys, Window w, double merge_tol) {
    if (!(w.lo < w.hi) || !std::isfinite(w.lo) || !std::isfinite(w.hi)) {
        throw InvalidArgument("pole window must be a bounded interval lo < hi");
    }
    std::vector<Pole> raw;
    for (const auto& b : sys.system.branches) branch_poles(b, w, raw);
    std::sort(raw.begin(), raw.end(), [](const Pole& a, const Pole& b) { return a.location < b.location; });
    PoleData out;
    for (const auto& p : raw) {
        if (!out.poles.empty() && p.location - out.poles.back().location <= merge_tol) {
            out.poles.back().weight += p.weight;
        } else {
            out.poles.push_back(p);
        }
    }
    return out;
}

Window default_window(const ProfileSystem& p, const ProfileSystem& q) {
    double kappa_min = 0.0;
    std::vector<double> isolated;
    for (const auto* s : {&p, &q}) {
        for (const auto& b : s->system.branches) {
            if (b.regime() == Regime::cot) {
                kappa_min = kappa_min == 0.0 ? b.kappa : std::min(kappa_min, b.kappa);
            }
            std::vector<Pole> poles;
            if (b.regime() == Regime::coth || b.regime() == Regime::flat_pole) {
                branch_poles(b, {-1e300, 1e300}, poles);
                for (const auto& x : poles) isolated.push_back(x.location);
            }
        }
    }
    Window base{-1.0, 1.0};
    if (kappa_min > 0.0) base = {0.0, kPi / kappa_min};
    if (!isolated.empty()) {
        const auto [mn, mx] = std::minmax_element(isolated.begin(), isolated.end());
        base.lo = std::min(base.lo, *mn - 1.0);
        base.hi = std::max(base.hi, *mx + 1.0);
    }
    const double len = base.hi - base.lo;
    for (int k = 1; k < 1000; ++k) {
        const Window w{base.lo + 1e-3 * k * len, base.hi + 1e-3 * k * len};
        const auto poles = all_pole_locations(p, q, {w.lo - 1e-3 * len, w.hi + 1e-3 * len});
        const double guard = 1e-6 * len;
        if (!near_any(w.lo, poles, guard) && !near_any(w.hi, poles, guard)) return w;
    }
    return base;
}

bool same_branch_multiset(const ProfileSystem& p, const ProfileSystem& q, double tol) {
    const auto a = canonical_keys(p, tol);
    const auto b = canonical_keys(q, tol);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].cls != b[i].cls || a[i].multiplicity != b[i].multiplicity ||
            std::abs(a[i].kappa - b[i].kappa) > tol || std::abs(a[i].value - b[i].value) > tol) {
            return false;
        }
    }
    return true;
}

bool grid_profiles_equal(const ProfileSystem& p, const ProfileSystem& q, Window w, const EquivalenceOptions& opt) {
    return grid_gap(p, q, w, opt.grid_points, 0.37, {}, 0.0) <= opt.residual_tol;
}

Certificate profiles_equivalent(const ProfileSystem& p, const ProfileSystem& q, std::optional<Window> window,
                                const EquivalenceOptions& opt) {
    require_supported(p);
    require_supported(q);
    Certificate cert;
    cert.window = window ? *window : default_window(p, q);
    const Window w = cert.window;

    std::vector<Pole> a = extract_poles(p, w, opt.pole_tol).poles;
    std::vector<Pole> b = extract_poles(q, w, opt.pole_tol).poles;
    auto innermost = [](const std::vector<Pole>& v) {
        return std::min_element(v.begin(), v.end(), [](const Pole& x, const Pole& y) {
            return std::abs(x.location) < std::abs(y.location) ||
                   (std::abs(x.location) == std::abs(y.location) && x.location < y.location);
        });
    };
    while (!a.empty() || !b.empty()) {
        const auto ia = innermost(a);
        const auto ib = innermost(b);
        const bool from_p = ib == b.end() || (ia != a.end() && std::abs(ia->location) <= std::abs(ib->location));
        const Pole pole = from_p ? *ia : *ib;
        auto& other = from_p ? b : a;
        const auto match = std::find_if(other.begin(), other.end(), [&](const Pole& x) {
            return std::abs(x.location - pole.location) <= opt.pole_tol;
        });
        if (match == other.end() || match->weight != pole.weight) {
            const int w_other = match == other.end() ? 0 : match->weight;
            cert.witness = PoleWitness{pole.location, from_p ? pole.weight : w_other, from_p ? w_other : pole.weight};
            break;
        }
        other.erase(match);
        if (from_p) a.erase(ia); else b.erase(ib);
        ++cert.poles_matched;
    }

    const auto poles = all_pole_locations(p, q, w);
    cert.residual = grid_gap(p, q, w, opt.grid_points, 0.5, poles, kPoleGuard * (w.hi - w.lo));
    cert.verdict = (cert.witness || cert.residual > opt.residual_tol) ? Verdict::distinct : Verdict::equivalent;
    if (cert.verdict == Verdict::distinct && !cert.witness) cert.note = "poles agree but the smooth parts differ";
    cert.multiset_equal = same_branch_multiset(p, q, opt.pole_tol);
    cert.grid_equal = grid_profiles_equal(p, q, w, opt);
    return cert;
}

Certificate isoparametric_verdict(const std::vector<ProfileSystem>& family, bool kappa_constant) {
    if (family.empty()) throw InvalidArgument("isoparametric_verdict needs a nonempty family");
    Certificate out;
    out.multiset_equal = true;
    out.grid_equal = true;
    for (std::size_t i = 1; i < family.size(); ++i) {
        Certificate c = profiles_equivalent(family.front(), family[i]);
        if (kappa_constant && kappa_data(family.front()) != kappa_data(family[i])) {
            c.verdict = Verdict::contradiction;
            c.note = "member " + std::to_string(i) + " has different K eigenvalue data although it is declared constant";
            return c;
        }
        if (c.verdict != Verdict::equivalent) {
            c.note = "member " + std::to_string(i) + " differs from member 0" + (c.note.empty() ? "" : ": " + c.note);
            return c;
        }
        out.residual = std::max(out.residual, c.residual);
        out.poles_matched += c.poles_matched;
        out.multiset_equal = out.multiset_equal && c.multiset_equal;
        out.grid_equal = out.grid_equal && c.grid_equal;
        out.window = c.window;
    }
    out.verdict = Verdict::equivalent;
    return out;
}

// Newton identities ---------------------------------------------------------

namespace {

double power_sum_error(const std::vector<double>& roots, const std::vector<double>& p, int n) {
    double worst = 0.0;
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (const double r : roots) s += std::pow(r, k);
        const double target = p[static_cast<std::size_t>(k - 1)];
        worst = std::max(worst, std::abs(s - target) / std::max(1.0, std::abs(target)));
    }
    return worst;
}

/// Real multiset from complex roots after merging clusters of diameter <= delta; empty if
/// some cluster keeps an imaginary part above the tolerance.
std::optional<std::vector<double>> clustered_roots(const std::vector<std::complex<double>>& roots, double delta,
                                                   double scale) {
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(roots[i] - roots[j]) <= delta) parent[find(i)] = find(j);
        }
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (find(i) != i) continue;
        std::complex<double> sum = 0.0;
        int count = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (find(j) == i) {
                sum += roots[j];
                ++count;
            }
        }
        const std::complex<double> mean = sum / static_cast<double>(count);
        if (std::abs(mean.imag()) > kImagTol * scale) return std::nullopt;
        out.insert(out.end(), static_cast<std::size_t>(count), mean.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Gauss-Newton on sum_j x_j^k = p_k (k = 1..n), rows scaled by max(1, |p_k|).
std::vector<double> polish_roots(std::vector<double> x, const std::vector<double>& p, int n) {
    const auto m = static_cast<Eigen::Index>(x.size());
    for (int iter = 0; iter < 50; ++iter) {
        Eigen::VectorXd f(n);
        Eigen::MatrixXd jac(n, m);
        for (int k = 1; k <= n; ++k) {
            const double w = 1.0 / std::max(1.0, std::abs(p[static_cast<std::size_t>(k - 1)]));
            double s = 0.0;
            for (Eigen::Index j = 0; j < m; ++j) {
                const double xj = x[static_cast<std::size_t>(j)];
                s += std::pow(xj, k);
                jac(k - 1, j) = w * k * std::pow(xj, k - 1);
            }
            f[k - 1] = w * (s - p[static_cast<std::size_t>(k - 1)]);
        }
        if (f.cwiseAbs().maxCoeff() <= 1e-15) break;
        const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-f);
        if (!step.allFinite()) break;
        for (Eigen::Index j = 0; j < m; ++j) x[static_cast<std::size_t>(j)] += step[j];
        if (step.cwiseAbs().maxCoeff() <= 1e-16) break;
    }
    std::sort(x.begin(), x.end());
    return x;
}

}  // namespace

std::vector<double> newton_recover(const std::vector<double>& power_sums, int n) {
    if (n < 0) throw InvalidArgument("multiset size must be non-negative");
    if (static_cast<int>(power_sums.size()) < n) throw InvalidArgument("need at least n power sums");
    if (n == 0) return {};

    std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        double s = 0.0;
        for (int i = 1; i <= k; ++i) {
            const double sign = (i % 2 == 1) ? 1.0 : -1.0;
            s += sign * e[static_cast<std::size_t>(k - i)] * power_sums[static_cast<std::size_t>(i - 1)];
        }
        e[static_cast<std::size_t>(k)] = s / k;
    }
    if (n == 1) return {e[1]};

    Eigen::VectorXd coeffs(n + 1);
    coeffs[n] = 1.0;
    for (int k = 1; k <= n; ++k) coeffs[n - k] = ((k % 2 == 0) ? 1.0 : -1.0) * e[static_cast<std::size_t>(k)];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(coeffs);
    std::vector<std::complex<double>> roots(solver.roots().data(), solver.roots().data() + solver.roots().size());
    double scale = 1.0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));

    std::vector<std::vector<double>> candidates;
    bool complex_roots = false;
    for (const double rel : {0.0, 1e-7, 1e-5, 1e-3, 1e-2}) {
        const auto cand = clustered_roots(roots, rel * scale, scale);
        if (cand) candidates.push_back(*cand);
        else complex_roots = complex_roots || rel == 0.0;
    }
    std::vector<double> real_parts;
    for (const auto& r : roots) real_parts.push_back(r.real());
    std::sort(real_parts.begin(), real_parts.end());
    candidates.push_back(real_parts);

    std::optional<std::vector<double>> best;
    double best_err = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
        for (const auto& cand : {c, polish_roots(c, power_sums, n)}) {
            const double err = power_sum_error(cand, power_sums, n);
            if (err < best_err) {
                best_err = err;
                best = cand;
            }
        }
    }
    if (best_err > 1e-8) {
        if (complex_roots) {
            throw InconsistentPowerSumsError("power sums have complex roots (imaginary part above 1e-8)");
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3g", best_err);
        throw InconsistentPowerSumsError(std::string("recovered multiset reproduces the power sums only to ") + buf);
    }
    return *best;
}

std::vector<double> power_sums(const ProfileSystem& sys, int kmax, double t) {
    std::vector<double> out(static_cast<std::size_t>(std::max(kmax, 0)), 0.0);
    for (const auto& b : sys.system.branches) {
        const double l = branch_value(b, t);
        double pw = 1.0;
        for (int k = 1; k <= kmax; ++k) {
            pw *= l;
            out[static_cast<std::size_t>(k - 1)] += b.multiplicity * pw;
        }
    }
    return out;
}

namespace {

/// Distance from t to the nearest pole of b (infinity if none).
double pole_distance(const CurvatureBranch& b, double t) {
    switch (b.regime()) {
        case Regime::cot: {
            const double x = b.phase - b.kappa * t;
            return std::abs(x - kPi * std::round(x / kPi)) / b.kappa;
        }
        case Regime::coth: return std::abs(std::atanh(b.kappa / b.phase) / b.kappa - t);
        case Regime::flat_pole: return std::abs(1.0 / b.phase - t);
        default: return std::numeric_limits<double>::infinity();
    }
}

}  // namespace

CascadeResult power_sum_cascade(const ProfileSystem& sys, int kmax, double t, double h) {
    if (kmax < 1) throw InvalidArgument("kmax must be at least 1");
    if (!(h > 0.0)) throw InvalidArgument("difference step must be positive");
    CascadeResult res;
    res.power_sums = power_sums(sys, kmax + 1, t);
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& b : sys.system.branches) dist = std::min(dist, pole_distance(b, t));
    const double step = std::min(h, 1e-3 * dist);
    const auto p2 = power_sums(sys, kmax, t + 2 * step);
    const auto p1 = power_sums(sys, kmax, t + step);
    const auto m1 = power_sums(sys, kmax, t - step);
    const auto m2 = power_sums(sys, kmax, t - 2 * step);
    for (int k = 1; k <= kmax; ++k) {
        double forcing = 0.0;
        for (const auto& b : sys.system.branches) {
            forcing += b.multiplicity * b.space_sign * b.kappa * b.kappa * std::pow(branch_value(b, t), k - 1);
        }
        const auto i = static_cast<std::size_t>(k - 1);
        const double fd = (-p2[i] + 8 * p1[i] - 8 * m1[i] + m2[i]) / (12 * step);
        const double pred = k * (res.power_sums[static_cast<std::size_t>(k)] + forcing);
        res.derivative.push_back(fd);
        res.predicted.push_back(pred);
        res.residuals.push_back(std::abs(fd - pred) / std::max(1.0, std::abs(pred)));
    }
    return res;
}

double reduced_phase(double theta) {
    double x = std::fmod(theta + kPi / 2, kPi);
    if (x <= 0.0) x += kPi;
    return x - kPi / 2;
}

std::optional<double> phase_sign_split(double kappa_p, double kappa_q, double r, double t_max, int samples,
                                       bool reduce) {
    for (int i = 1; i <= samples; ++i) {
        const double t = t_max * i / samples;
        double a = kappa_p * (r - t);
        double b = kappa_q * (r - t);
        if (reduce) {
            a = reduced_phase(a);
            b = reduced_phase(b);
        }
        if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0)) return t;
    }
    return std::nullopt;
}

}  // namespace curvadapt::iso
