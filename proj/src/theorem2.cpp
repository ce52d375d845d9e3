#include "curvadapt/theorem2.hpp"

#include "curvadapt/errors.hpp"
#include "curvadapt/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace curvadapt::tube {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTimeTol = 1e-6;
constexpr double kValueTol = 1e-6;
constexpr int kFourDim = 7;
constexpr int kOneDim = 8;
constexpr double kFourKappa = 2.0;
constexpr double kOneKappa = 1.0;

double slot_theta(int slot) { return slot * kPi / 4; }

double q2_time(int g) { return kPi / (2 * g); }

/// Index into BranchType::curvature_q2 / focal_at_q2.
int q2_index(int g) { return g == 1 ? 0 : 1; }

std::vector<double> allowed_times(int g) {
    std::vector<double> out;
    for (int k = 0; k * q2_time(g) < kPi - kTimeTol; ++k) out.push_back(k * q2_time(g));
    return out;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Branches of family `kappa` follow types[family * 4 + slot].
const BranchType& type_of(const std::vector<BranchType>& types, int family, int slot) {
    return types[static_cast<std::size_t>(family * kPhaseSlots + slot)];
}

/// A compact branch kappa cot(theta - kappa t) with theta in [0, pi); theta = 0 is stored as pi
/// so that the regularity interval is (0, pi / kappa).
CurvatureBranch slot_branch(double kappa, int slot, int multiplicity) {
    return {kappa, 1, slot == 0 ? kPi : slot_theta(slot), multiplicity, {}};
}

}  // namespace

const char* rejection_name(Rejection r) {
    switch (r) {
        case Rejection::none: return "accepted";
        case Rejection::stray_focal_point: return "stray_focal_point";
        case Rejection::missing_focal_manifold: return "missing_focal_manifold";
        case Rejection::focal_multiplicity_mismatch: return "focal_multiplicity_mismatch";
        case Rejection::nonzero_four_curvature: return "nonzero_four_curvature";
        case Rejection::one_curvature_out_of_range: return "one_curvature_out_of_range";
        case Rejection::focal_not_minimal: return "focal_not_minimal";
        case Rejection::no_totally_geodesic_focal: return "no_totally_geodesic_focal";
        case Rejection::not_in_catalog: return "not_in_catalog";
    }
    return "?";
}

std::vector<BranchType> closed_form_branch_types() {
    std::vector<BranchType> out;
    for (const double kappa : {kFourKappa, kOneKappa}) {
        for (int slot = 0; slot < kPhaseSlots; ++slot) {
            BranchType bt;
            bt.kappa = kappa;
            bt.slot = slot;
            // Poles of kappa cot(theta - kappa t): t = (theta + n pi) / kappa.
            for (int n = 0;; ++n) {
                const double t = (slot_theta(slot) + n * kPi) / kappa;
                if (t >= kPi - kTimeTol) break;
                bt.focal_times.push_back(t);
            }
            if (slot != 0) bt.curvature_q1 = kappa / std::tan(slot_theta(slot));
            for (int g = 1; g <= 2; ++g) {
                const double t2 = q2_time(g);
                const bool focal = std::any_of(bt.focal_times.begin(), bt.focal_times.end(),
                                               [&](double t) { return near(t, t2, kTimeTol); });
                bt.focal_at_q2[static_cast<std::size_t>(q2_index(g))] = focal;
                if (!focal) {
                    // Past an earlier pole the closed form continues analytically.
                    bt.curvature_q2[static_cast<std::size_t>(q2_index(g))] =
                        kappa / std::tan(slot_theta(slot) - kappa * t2);
                }
            }
            out.push_back(std::move(bt));
        }
    }
    return out;
}

std::vector<BranchType> integrated_branch_types(int steps) {
    std::vector<BranchType> out;
    const double h = kPi / steps;
    for (const double kappa : {kFourKappa, kOneKappa}) {
        for (int slot = 0; slot < kPhaseSlots; ++slot) {
            BranchType bt;
            bt.kappa = kappa;
            bt.slot = slot;
            // Jacobi field with Y'/Y = -lambda at t = 0; slot 0 vanishes at t = 0.
            double y = 1.0;
            double dy = 0.0;
            if (slot == 0) {
                y = 0.0;
                dy = 1.0;
                bt.focal_times.push_back(0.0);
            } else {
                const double theta = slot_theta(slot);
                bt.curvature_q1 = kappa * std::cos(theta) / std::sin(theta);
                dy = -bt.curvature_q1;
                if (std::abs(dy) < 1e-15) dy = 0.0;
            }
            const double k2 = kappa * kappa;
            auto record_q2 = [&](int k, double yv, double dyv) {
                for (int g = 1; g <= 2; ++g) {
                    if (k != steps / (2 * g)) continue;
                    const auto idx = static_cast<std::size_t>(q2_index(g));
                    bt.focal_at_q2[idx] = std::abs(yv) < kTimeTol;
                    if (!bt.focal_at_q2[idx]) bt.curvature_q2[idx] = -dyv / yv;
                }
            };
            record_q2(0, y, dy);
            for (int k = 0; k < steps; ++k) {
                const double y0 = y;
                const double a1 = dy, b1 = -k2 * y;
                const double a2 = dy + 0.5 * h * b1, b2 = -k2 * (y + 0.5 * h * a1);
                const double a3 = dy + 0.5 * h * b2, b3 = -k2 * (y + 0.5 * h * a2);
                const double a4 = dy + h * b3, b4 = -k2 * (y + h * a3);
                y += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
                dy += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
                if (k + 1 < steps && y0 != 0.0 && (y == 0.0 || std::signbit(y) != std::signbit(y0))) {
                    const double t = k * h + h * y0 / (y0 - y);
                    bt.focal_times.push_back(t);
                }
                record_q2(k + 1, y, dy);
            }
            // Snap zeros to the quarter-period lattice when they sit on it.
            for (double& t : bt.focal_times) {
                const double q = std::round(t / (kPi / 8)) * (kPi / 8);
                if (near(t, q, kTimeTol)) t = q;
            }
            out.push_back(std::move(bt));
        }
    }
    return out;
}

std::vector<CatalogEntry> computed_catalog(std::vector<cayley::CurvatureAdaptedCheck>* checks) {
    std::vector<CatalogEntry> out;
    for (const auto& v : cayley::totally_geodesic_candidates()) {
        const auto check = cayley::check_curvature_adapted(v, SpaceSign::compact, 8, kDefaultSeed);
        if (checks) checks->push_back(check);
        if (!check.curvature_adapted) continue;
        Core core = Core::point;
        if (v.name == "OP1") core = Core::line;
        else if (v.name == "HP2") core = Core::hp2;
        else if (v.name != "point") continue;
        out.push_back({v.name, check.four_dim, check.one_dim, core});
    }
    return out;
}

std::vector<FocalConfiguration> enumerate_configurations() {
    std::vector<FocalConfiguration> out;
    auto compositions = [](int total) {
        std::vector<std::array<int, kPhaseSlots>> res;
        for (int a = 0; a <= total; ++a)
            for (int b = 0; a + b <= total; ++b)
                for (int c = 0; a + b + c <= total; ++c) res.push_back({a, b, c, total - a - b - c});
        return res;
    };
    const auto fours = compositions(kFourDim);
    const auto ones = compositions(kOneDim);
    for (int g = 1; g <= 2; ++g) {
        for (const auto& f : fours) {
            for (const auto& o : ones) out.push_back({g, f, o});
        }
    }
    return out;
}

namespace {

FocalManifold focal_manifold(const FocalConfiguration& c, const std::vector<BranchType>& types, bool at_q1) {
    FocalManifold fm;
    fm.time = at_q1 ? 0.0 : q2_time(c.g);
    const auto idx = static_cast<std::size_t>(q2_index(c.g));
    for (int family = 0; family < 2; ++family) {
        const auto& counts = family == 0 ? c.four : c.one;
        for (int slot = 0; slot < kPhaseSlots; ++slot) {
            const int m = counts[static_cast<std::size_t>(slot)];
            if (m == 0) continue;
            const BranchType& bt = type_of(types, family, slot);
            const bool collapses = at_q1 ? slot == 0 : bt.focal_at_q2[idx];
            if (collapses) {
                fm.codimension_minus_one += m;
                continue;
            }
            const double v = at_q1 ? bt.curvature_q1 : bt.curvature_q2[idx];
            (family == 0 ? fm.four_dim : fm.one_dim) += m;
            auto& dst = family == 0 ? fm.four_curvatures : fm.one_curvatures;
            dst.insert(dst.end(), static_cast<std::size_t>(m), v);
            fm.mean_curvature += m * v;
        }
    }
    fm.dimension = fm.four_dim + fm.one_dim;
    fm.totally_geodesic = std::all_of(fm.four_curvatures.begin(), fm.four_curvatures.end(),
                                      [](double v) { return std::abs(v) <= kValueTol; }) &&
                          std::all_of(fm.one_curvatures.begin(), fm.one_curvatures.end(),
                                      [](double v) { return std::abs(v) <= kValueTol; });
    return fm;
}

/// Max deviation between the configuration's flow near the geodesic focal manifold and the
/// tube table of the matching core.
double row_check(const FocalConfiguration& c, bool at_q1, Core core) {
    const double t2 = q2_time(c.g);
    const double r = t2 / 3;
    std::vector<double> flow;
    for (int family = 0; family < 2; ++family) {
        const auto& counts = family == 0 ? c.four : c.one;
        const double kappa = family == 0 ? kFourKappa : kOneKappa;
        for (int slot = 0; slot < kPhaseSlots; ++slot) {
            const int m = counts[static_cast<std::size_t>(slot)];
            if (m == 0) continue;
            const CurvatureBranch b = slot_branch(kappa, slot, m);
            // Tube of radius r about Q1 sits at t = r with the normal pointing away from the core;
            // about Q2 it sits at t = t2 - r with the normal pointing toward it.
            double v = 0.0;
            try {
                v = at_q1 ? -evolve(b, r) : evolve(b, t2 - r);
            } catch (const FocalPointError&) {
                return std::numeric_limits<double>::infinity();
            }
            flow.insert(flow.end(), static_cast<std::size_t>(m), v);
        }
    }
    std::vector<double> table;
    for (const auto& b : tube_spectrum({Ambient::op2, core, r}).branches) {
        table.insert(table.end(), static_cast<std::size_t>(b.multiplicity), evolve(b, 0.0));
    }
    if (flow.size() != table.size()) return std::numeric_limits<double>::infinity();
    std::sort(flow.begin(), flow.end());
    std::sort(table.begin(), table.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < flow.size(); ++i) worst = std::max(worst, std::abs(flow[i] - table[i]));
    return worst;
}

}  // namespace

Rejection classify(const FocalConfiguration& c, const std::vector<BranchType>& types,
                   const std::vector<CatalogEntry>& catalog, Survivor* out) {
    const std::vector<double> allowed = allowed_times(c.g);
    std::vector<int> focal_mult(allowed.size(), 0);

    for (int family = 0; family < 2; ++family) {
        const auto& counts = family == 0 ? c.four : c.one;
        for (int slot = 0; slot < kPhaseSlots; ++slot) {
            const int m = counts[static_cast<std::size_t>(slot)];
            if (m == 0) continue;
            for (const double t : type_of(types, family, slot).focal_times) {
                const auto it = std::find_if(allowed.begin(), allowed.end(),
                                             [&](double a) { return near(a, t, kTimeTol); });
                if (it == allowed.end()) return Rejection::stray_focal_point;
                focal_mult[static_cast<std::size_t>(it - allowed.begin())] += m;
            }
        }
    }
    if (focal_mult[0] == 0 || focal_mult[1] == 0) return Rejection::missing_focal_manifold;
    const std::size_t period = static_cast<std::size_t>(2);  // pi / g in units of pi / (2g)
    for (std::size_t i = 0; i + period < allowed.size(); ++i) {
        if (focal_mult[i] != focal_mult[i + period]) return Rejection::focal_multiplicity_mismatch;
    }

    const FocalManifold q1 = focal_manifold(c, types, true);
    const FocalManifold q2 = focal_manifold(c, types, false);
    for (const auto* fm : {&q1, &q2}) {
        for (const double v : fm->four_curvatures) {
            if (std::abs(v) > kValueTol) return Rejection::nonzero_four_curvature;
        }
    }
    for (const double v : q1.one_curvatures) {
        if (!(near(v, 1.0, kValueTol) || near(v, 0.0, kValueTol) || near(v, -1.0, kValueTol))) {
            return Rejection::one_curvature_out_of_range;
        }
    }
    if (std::abs(q1.mean_curvature) > kValueTol || std::abs(q2.mean_curvature) > kValueTol) {
        return Rejection::focal_not_minimal;
    }
    if (!q1.totally_geodesic && !q2.totally_geodesic) return Rejection::no_totally_geodesic_focal;

    const CatalogEntry* match = nullptr;
    bool at_q1 = true;
    for (const bool first : {true, false}) {
        const FocalManifold& fm = first ? q1 : q2;
        if (!fm.totally_geodesic) continue;
        for (const auto& e : catalog) {
            if (e.four_dim == fm.four_dim && e.one_dim == fm.one_dim) {
                match = &e;
                at_q1 = first;
                break;
            }
        }
        if (match) break;
    }
    if (!match) return Rejection::not_in_catalog;

    if (out) {
        out->config = c;
        out->q1 = q1;
        out->q2 = q2;
        out->totally_geodesic_name = match->name;
        out->geodesic_at_q1 = at_q1;
        out->core = match->core;
        out->row_check_residual = row_check(c, at_q1, match->core);
    }
    return Rejection::none;
}

Theorem2Result theorem2_enumerate() {
    Theorem2Result res;
    res.catalog = computed_catalog(&res.catalog_checks);
    const auto closed = closed_form_branch_types();
    const auto integrated = integrated_branch_types();

    for (const auto& c : enumerate_configurations()) {
        ++res.enumerated;
        Survivor s;
        const Rejection r = classify(c, closed, res.catalog, &s);
        const Rejection oracle = classify(c, integrated, res.catalog);
        if ((r == Rejection::none) != (oracle == Rejection::none)) ++res.oracle_disagreements;
        ++res.rejections[r];
        if (r == Rejection::none) res.survivors.push_back(std::move(s));
    }
    res.oracle_agrees = res.oracle_disagreements == 0;

    std::set<Core> cores;
    bool rows_ok = true;
    for (const auto& s : res.survivors) {
        cores.insert(s.core == Core::line ? Core::point : s.core);
        rows_ok = rows_ok && s.row_check_residual <= 1e-9;
    }
    res.matches_catalog_rows = rows_ok && cores == std::set<Core>{Core::point, Core::hp2};
    return res;
}

}  // namespace curvadapt::tube
