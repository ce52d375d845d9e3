#include "curvadapt/report.hpp"

#include "curvadapt/errors.hpp"
#include "curvadapt/octonion.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace curvadapt::report {

namespace {

/// JSON has no infinity; non-finite values are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json focal_json(const tube::FocalManifold& f) {
    return Json{{"time", f.time},
                {"dimension", f.dimension},
                {"four_dim", f.four_dim},
                {"one_dim", f.one_dim},
                {"collapsing", f.codimension_minus_one},
                {"totally_geodesic", f.totally_geodesic},
                {"mean_curvature", f.mean_curvature}};
}

Json branch_row(const tube::CurvatureBranch& b) {
    const double value = tube::evolve(b, 0.0);
    return Json{{"name", b.tag},
                {"kappa", b.kappa},
                {"space_sign", b.space_sign},
                {"multiplicity", b.multiplicity},
                {"value", value},
                {"phase", b.phase},
                {"regime", tube::regime_name(b.regime())}};
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Octonions -----------------------------------------------------------------

Json octonion_table_json() {
    const auto& t = MultiplicationTable::canonical();
    Json table = Json::array();
    for (std::size_t i = 0; i < MultiplicationTable::kDim; ++i) {
        for (std::size_t j = 0; j < MultiplicationTable::kDim; ++j) {
            const SignedIndex s = t(i, j);
            table.push_back(Json{{"i", i}, {"j", j}, {"sign", s.sign}, {"k", s.index}});
        }
    }
    Json lines = Json::array();
    for (const auto& l : MultiplicationTable::fano_lines()) lines.push_back(l);
    return Json{{"dimension", MultiplicationTable::kDim}, {"fano_lines", lines}, {"table", table}};
}

std::string octonion_table_csv() {
    const auto& t = MultiplicationTable::canonical();
    std::ostringstream os;
    os << "i,j,sign,k\n";
    for (std::size_t i = 0; i < MultiplicationTable::kDim; ++i) {
        for (std::size_t j = 0; j < MultiplicationTable::kDim; ++j) {
            const SignedIndex s = t(i, j);
            os << i << ',' << j << ',' << s.sign << ',' << s.index << '\n';
        }
    }
    return os.str();
}

std::string octonion_table_md() {
    const auto& t = MultiplicationTable::canonical();
    std::ostringstream os;
    os << "| * |";
    for (std::size_t j = 0; j < MultiplicationTable::kDim; ++j) os << " J" << j << " |";
    os << "\n|---|";
    for (std::size_t j = 0; j < MultiplicationTable::kDim; ++j) os << "---|";
    os << '\n';
    for (std::size_t i = 0; i < MultiplicationTable::kDim; ++i) {
        os << "| J" << i << " |";
        for (std::size_t j = 0; j < MultiplicationTable::kDim; ++j) {
            const SignedIndex s = t(i, j);
            os << ' ' << (s.sign < 0 ? "-" : "") << 'J' << s.index << " |";
        }
        os << '\n';
    }
    return os.str();
}

// Cayley plane --------------------------------------------------------------

Json spectrum_json(const Spectrum& spec, SpaceSign s, std::uint64_t seed, const cayley::TangentPair& xi) {
    Json eig = Json::array();
    for (const auto& g : spec.groups) eig.push_back(Json{{"value", g.value}, {"multiplicity", g.multiplicity}});
    Json x = Json::array();
    const Eigen::VectorXd v = xi.to_vector();
    for (Eigen::Index i = 0; i < v.size(); ++i) x.push_back(v[i]);
    return Json{{"space", s == SpaceSign::compact ? "op2" : "oh2"},
                {"seed", seed},
                {"xi", x},
                {"eigenvalues", eig},
                {"residual", spec.max_residual},
                {"orthonormality_error", spec.orthonormality_error}};
}

Json sectional_json(const sweep::SectionalStats& st, SpaceSign s, std::uint64_t seed) {
    return Json{{"space", s == SpaceSign::compact ? "op2" : "oh2"},
                {"seed", seed},
                {"samples", st.samples},
                {"min", st.min},
                {"max", st.max}};
}

// Tubes ---------------------------------------------------------------------

Json pcsystem_json(const tube::PCSystem& sys, const tube::TubeDescriptor& d) {
    Json rows = Json::array();
    for (const auto& b : sys.branches) rows.push_back(branch_row(b));
    Json out{{"ambient", tube::ambient_name(d.ambient)}, {"core", tube::core_name(d.core)}};
    if (d.core == tube::Core::horosphere) out["radius"] = nullptr;
    else out["radius"] = d.radius;
    out["dimension"] = sys.total_multiplicity();
    out["mean_curvature"] = tube::mean_curvature(sys, 0.0);
    out["branches"] = rows;
    return out;
}

std::string pcsystem_csv(const tube::PCSystem& sys) {
    std::ostringstream os;
    os << "name,kappa,space_sign,multiplicity,value,phase\n";
    for (const auto& b : sys.branches) {
        os << b.tag << ',' << format_double(b.kappa) << ',' << b.space_sign << ',' << b.multiplicity << ','
           << format_double(tube::evolve(b, 0.0)) << ',' << format_double(b.phase) << '\n';
    }
    return os.str();
}

std::string pcsystem_md(const tube::PCSystem& sys) {
    std::ostringstream os;
    os << "| name | kappa | space_sign | multiplicity | value | phase |\n";
    os << "|---|---|---|---|---|---|\n";
    for (const auto& b : sys.branches) {
        os << "| " << b.tag << " | " << format_double(b.kappa) << " | " << b.space_sign << " | " << b.multiplicity
           << " | " << format_double(tube::evolve(b, 0.0)) << " | " << format_double(b.phase) << " |\n";
    }
    return os.str();
}

// Theorems ------------------------------------------------------------------

Json theorem2_json(const tube::Theorem2Result& r) {
    Json survivors = Json::array();
    for (const auto& s : r.survivors) {
        Json four = Json::array();
        Json one = Json::array();
        for (int k = 0; k < tube::kPhaseSlots; ++k) {
            four.push_back(s.config.four[static_cast<std::size_t>(k)]);
            one.push_back(s.config.one[static_cast<std::size_t>(k)]);
        }
        survivors.push_back(Json{{"g", s.config.g},
                                 {"four_counts", four},
                                 {"one_counts", one},
                                 {"q1", focal_json(s.q1)},
                                 {"q2", focal_json(s.q2)},
                                 {"totally_geodesic", s.totally_geodesic_name},
                                 {"at", s.geodesic_at_q1 ? "q1" : "q2"},
                                 {"core", tube::core_name(s.core)},
                                 {"row_check_residual", number(s.row_check_residual)}});
    }
    Json rejections = Json::object();
    for (const auto& [k, v] : r.rejections) rejections[tube::rejection_name(k)] = v;
    Json catalog = Json::array();
    for (const auto& c : r.catalog_checks) {
        catalog.push_back(Json{{"name", c.name},
                               {"lie_triple", c.lie_triple},
                               {"curvature_adapted", c.curvature_adapted},
                               {"four_dim", c.four_dim},
                               {"one_dim", c.one_dim}});
    }
    return Json{{"verdict", r.matches_catalog_rows && r.oracle_agrees ? "equivalent" : "distinct"},
                {"phase_slots", Json::array({0.0, std::numbers::pi / 4, std::numbers::pi / 2, 3 * std::numbers::pi / 4})},
                {"enumerated", r.enumerated},
                {"survivors", survivors},
                {"rejections", rejections},
                {"catalog", catalog},
                {"oracle_agrees", r.oracle_agrees},
                {"oracle_disagreements", r.oracle_disagreements},
                {"matches_catalog_rows", r.matches_catalog_rows}};
}

Json theorem3_json(const tube::Theorem3Certificate& c, const tube::EqualityBranchResult& eq) {
    Json points = Json::array();
    for (const auto& p : c.points) {
        points.push_back(Json{{"alpha", p.alpha},
                              {"cos_alpha", p.cos_alpha},
                              {"mu1", p.mu1},
                              {"mu2", p.mu2},
                              {"eigen_residual", p.eigen_residual},
                              {"ratio", p.ratio},
                              {"ratio_expected", p.ratio_expected},
                              {"ratio_error", p.ratio_error},
                              {"scale_x1", p.scale1},
                              {"scale_x2", p.scale2},
                              {"fixed_c", p.fixed_c ? Json(*p.fixed_c) : Json(nullptr)},
                              {"best_c", p.best_c},
                              {"best_d", p.best_d},
                              {"best_lambda2_0", p.best_lambda2_0},
                              {"min_residual", number(p.min_residual)},
                              {"window", p.window}});
    }
    return Json{{"verdict", verdict_name(c.verdict)},
                {"constraint", tube::constraint_name(c.constraint)},
                {"sign", tube::riccati_sign_name(c.sign)},
                {"residual", tube::residual_kind_name(c.kind)},
                {"residual_floor", number(c.residual_floor)},
                {"floor_alpha", c.floor_alpha},
                {"floor_threshold", c.floor_threshold},
                {"max_ratio_error", c.max_ratio_error},
                {"search_range", Json::array({-c.range, c.range})},
                {"points", points},
                {"equality_branch", Json{{"alpha", eq.alpha},
                                         {"mu2", eq.mu2},
                                         {"eigen_residual", eq.eigen_residual},
                                         {"forced_lambda2", eq.forced_lambda2},
                                         {"riccati_residual", eq.riccati_residual},
                                         {"verdict", verdict_name(eq.verdict)}}}};
}

Json certificate_json(const iso::Certificate& c) {
    Json out{{"verdict", verdict_name(c.verdict)},
             {"residual", number(c.residual)},
             {"window", Json::array({c.window.lo, c.window.hi})},
             {"poles_matched", c.poles_matched},
             {"multiset_equal", c.multiset_equal},
             {"grid_equal", c.grid_equal}};
    if (c.witness) {
        out["witness"] = Json{{"location", c.witness->location},
                              {"weight_p", c.witness->weight_p},
                              {"weight_q", c.witness->weight_q}};
    } else {
        out["witness"] = nullptr;
    }
    out["note"] = c.note;
    return out;
}

Json cascade_json(const iso::CascadeResult& r, int kmax, double t) {
    double worst = 0.0;
    for (const double x : r.residuals) worst = std::max(worst, x);
    return Json{{"kmax", kmax},
                {"t", t},
                {"power_sums", r.power_sums},
                {"derivative", r.derivative},
                {"predicted", r.predicted},
                {"residuals", r.residuals},
                {"max_residual", worst}};
}

// Systems -------------------------------------------------------------------

iso::ProfileSystem parse_system(const Json& j, const std::string& label) {
    if (!j.is_array()) throw InvalidArgument("system '" + label + "' must be a JSON array of branches");
    iso::ProfileSystem sys;
    sys.label = label;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& e = j[i];
        const std::string where = "system '" + label + "' branch " + std::to_string(i);
        if (!e.is_object()) throw InvalidArgument(where + ": expected an object");
        auto num = [&](const char* key) -> double {
            if (!e.contains(key) || !e[key].is_number()) {
                throw InvalidArgument(where + ": missing numeric field '" + key + "'");
            }
            return e[key].get<double>();
        };
        if (e.contains("regime") && !e["regime"].is_string()) {
            throw InvalidArgument(where + ": 'regime' must be a string");
        }
        const std::string regime = e.contains("regime") ? e["regime"].get<std::string>() : "cot";
        int mult = 1;
        if (e.contains("mult")) {
            if (!e["mult"].is_number_integer() || e["mult"].get<int>() < 1) {
                throw InvalidArgument(where + ": 'mult' must be a positive integer");
            }
            mult = e["mult"].get<int>();
        }
        tube::CurvatureBranch b;
        if (regime == "cot") {
            const double kappa = num("kappa");
            double theta = std::fmod(num("theta"), std::numbers::pi);
            if (theta < 0.0) theta += std::numbers::pi;
            if (!(kappa > 0.0)) throw InvalidArgument(where + ": cot branch needs kappa > 0");
            if (theta == 0.0) throw InvalidArgument(where + ": theta is a multiple of pi (pole at t = 0)");
            b = tube::CurvatureBranch::compact(kappa, theta, mult);
        } else if (regime == "coth" || regime == "tanh" || regime == "const") {
            const double kappa = num("kappa");
            const double lambda = num("lambda");
            if (!(kappa > 0.0)) throw InvalidArgument(where + ": " + regime + " branch needs kappa > 0");
            b = tube::CurvatureBranch::from_value(kappa, -1, lambda, mult);
            if (std::string(tube::regime_name(b.regime())) != regime) {
                throw InvalidArgument(where + ": lambda = " + format_double(lambda) + " is in the " +
                                      tube::regime_name(b.regime()) + " regime, not " + regime);
            }
        } else if (regime == "flat") {
            b = tube::CurvatureBranch::from_value(0.0, 0, num("lambda"), mult);
        } else {
            throw InvalidArgument(where + ": unknown regime '" + regime + "' (cot, coth, tanh, const, flat)");
        }
        if (e.contains("name") && e["name"].is_string()) b.tag = e["name"].get<std::string>();
        sys.system.branches.push_back(b);
    }
    return sys;
}

Json system_json(const iso::ProfileSystem& s) {
    Json out = Json::array();
    for (const auto& b : s.system.branches) {
        const auto r = b.regime();
        if (r == tube::Regime::cot) {
            out.push_back(Json{{"kappa", b.kappa}, {"theta", b.phase}, {"mult", b.multiplicity}, {"regime", "cot"}});
        } else {
            out.push_back(Json{{"kappa", b.kappa}, {"lambda", b.phase}, {"mult", b.multiplicity},
                               {"regime", tube::regime_name(r)}});
        }
    }
    return out;
}

}  // namespace curvadapt::report
