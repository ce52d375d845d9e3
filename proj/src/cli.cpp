#include "curvadapt/cli.hpp"

#include "curvadapt/cayley_plane.hpp"
#include "curvadapt/errors.hpp"
#include "curvadapt/grassmannian.hpp"
#include "curvadapt/identities.hpp"
#include "curvadapt/isoparametric.hpp"
#include "curvadapt/octonion.hpp"
#include "curvadapt/random.hpp"
#include "curvadapt/report.hpp"
#include "curvadapt/sweep.hpp"
#include "curvadapt/theorem2.hpp"
#include "curvadapt/theorem3.hpp"
#include "curvadapt/tube_flow.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace curvadapt::cli {

namespace {

using report::Json;

class UsageError : public Error {
public:
    using Error::Error;
};

/// Tolerances that --tol may override.
std::map<std::string, double> default_tolerances() {
    return {{"eigen_gap", 1e-6},  {"floor", 1e-3},        {"refine", 1e-8},
            {"pole_tol", 1e-9},   {"residual_tol", 1e-9}, {"fd_step", 1e-3}};
}

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
    auto tol = default_tolerances();
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + item + "'");
        const std::string name = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (!tol.count(name)) {
            std::string known;
            for (const auto& [k, v] : default_tolerances()) known += (known.empty() ? "" : ", ") + k;
            throw UsageError("unknown tolerance '" + name + "' (known: " + known + ")");
        }
        try {
            std::size_t pos = 0;
            const double v = std::stod(value, &pos);
            if (pos != value.size() || !(v > 0.0)) throw std::invalid_argument("");
            tol[name] = v;
        } catch (const std::exception&) {
            throw UsageError("tolerance '" + name + "' needs a positive number, got '" + value + "'");
        }
    }
    return tol;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

SpaceSign parse_space(const std::string& s) {
    if (s == "op2" || s == "compact") return SpaceSign::compact;
    if (s == "oh2" || s == "noncompact") return SpaceSign::noncompact;
    throw UsageError("unknown space '" + s + "'");
}

/// Inline JSON text or @path.
Json read_json(const std::string& arg, const std::string& flag) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw UsageError("cannot read " + flag + " file '" + arg.substr(1) + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw UsageError("malformed JSON in " + flag + " at byte " + std::to_string(e.byte) + " (line " +
                         std::to_string(line) + ", column " + std::to_string(col) + "): " + e.what());
    }
}

iso::Window parse_window(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("--window expects a,b");
    try {
        const double a = std::stod(s.substr(0, comma));
        const double b = std::stod(s.substr(comma + 1));
        if (!(a < b)) throw UsageError("--window needs a < b");
        return {a, b};
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("--window expects two numbers a,b, got '" + s + "'");
    }
}

// Self test -----------------------------------------------------------------

struct Check {
    std::string name;
    bool passed;
    double value;
};

std::vector<Check> selftest_checks() {
    std::vector<Check> out;
    const double pi = std::numbers::pi;

    {
        Rng rng(kDefaultSeed);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            Octonion a;
            Octonion b;
            for (std::size_t k = 0; k < 8; ++k) {
                a[k] = uniform(rng, -1, 1);
                b[k] = uniform(rng, -1, 1);
            }
            worst = std::max(worst, std::abs(norm(a * b) - norm(a) * norm(b)) / (norm(a) * norm(b)));
        }
        out.push_back({"octonion_norm_multiplicativity", worst <= 1e-12, worst});
    }
    for (const SpaceSign s : {SpaceSign::compact, SpaceSign::noncompact}) {
        const auto st = sweep::spectrum_batch_parallel(s, 20, kDefaultSeed);
        out.push_back({std::string("cayley_spectrum_") + (s == SpaceSign::compact ? "op2" : "oh2"),
                       st.mismatches == 0 && st.max_residual <= 1e-9, st.max_residual});
    }
    {
        auto cayley_r = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
            return cayley::curvature(cayley::TangentPair::from_vector(x), cayley::TangentPair::from_vector(y),
                                     cayley::TangentPair::from_vector(z), SpaceSign::compact)
                .to_vector();
        };
        const auto d = tensor_defects(cayley_r, cayley::kDim, 100, kDefaultSeed);
        const double worst = std::max({d.antisymmetry, d.skew, d.pair_symmetry, d.bianchi});
        out.push_back({"cayley_tensor_identities", worst <= 1e-10, worst});
    }
    {
        const auto bundle = g2::StructureBundle::quaternionic_model(2);
        auto make = [&](g2::TensorVariant v) {
            return [&bundle, v](const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& z) {
                return g2::curvature_g2(x, y, z, bundle, SpaceSign::compact, v);
            };
        };
        const auto good = tensor_defects(make(g2::TensorVariant::corrected), bundle.dim(), 100, kDefaultSeed);
        const double worst = std::max({good.antisymmetry, good.skew, good.pair_symmetry, good.bianchi});
        out.push_back({"grassmannian_tensor_identities", worst <= 1e-10, worst});
        const auto bad = tensor_defects(make(g2::TensorVariant::verbatim), bundle.dim(), 100, kDefaultSeed);
        out.push_back({"grassmannian_verbatim_fails_pair_symmetry", bad.pair_symmetry > 1e-6, bad.pair_symmetry});
    }
    {
        const double r = pi / 8;
        const auto sys = tube::tube_spectrum({tube::Ambient::op2, tube::Core::hp2, r});
        const double expected[] = {1 / std::tan(r), -std::tan(r), 2 / std::tan(2 * r), -2 * std::tan(2 * r)};
        double worst = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            worst = std::max(worst, std::abs(tube::evolve(sys.branches[i], 0.0) - expected[i]));
        }
        out.push_back({"tube_table_hp2", worst <= 1e-12 && sys.total_multiplicity() == 15, worst});
    }
    {
        Rng rng(kDefaultSeed);
        double worst = 0.0;
        const double h = 1e-5;
        for (int i = 0; i < 100; ++i) {
            const double kappa = uniform(rng, 0.5, 2.0);
            const auto b = tube::CurvatureBranch::compact(kappa, uniform(rng, 0.3, pi - 0.3));
            const auto [lo, hi] = tube::regularity_interval(b);
            const double t = lo + (hi - lo) * uniform(rng, 0.25, 0.75);
            const double fd = (tube::evolve(b, t + h) - tube::evolve(b, t - h)) / (2 * h);
            const double l = tube::evolve(b, t);
            worst = std::max(worst, std::abs(fd - (l * l + kappa * kappa)) / std::max(1.0, l * l + kappa * kappa));
        }
        out.push_back({"riccati_finite_difference", worst <= 1e-6, worst});
    }
    {
        const auto res = tube::theorem2_enumerate();
        out.push_back({"theorem2_catalog_rows", res.matches_catalog_rows && res.oracle_agrees,
                       static_cast<double>(res.survivors.size())});
    }
    {
        tube::SweepOptions opt;
        opt.grid = 41;
        const auto p = tube::theorem3_point(pi / 3, opt);
        out.push_back({"theorem3_pi_over_3", p.min_residual >= 1e-3 && p.ratio_error <= 1e-8, p.min_residual});
    }
    {
        const std::vector<double> xs{-1.5, 0.25, 0.25, 2.0, 3.5};
        std::vector<double> p(xs.size(), 0.0);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            for (const double x : xs) p[k] += std::pow(x, static_cast<double>(k + 1));
        }
        const auto back = iso::newton_recover(p, static_cast<int>(xs.size()));
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(back[i] - xs[i]));
        out.push_back({"newton_round_trip", worst <= 1e-8, worst});
    }
    {
        iso::ProfileSystem a{{{tube::CurvatureBranch::compact(1.0, 0.7, 2), tube::CurvatureBranch::compact(2.0, 1.9, 3)}, {}}, "p"};
        iso::ProfileSystem b = a;
        b.system.branches[0].phase += 1e-2;
        const auto same = iso::profiles_equivalent(a, a);
        const auto diff = iso::profiles_equivalent(a, b);
        out.push_back({"profile_oracle", same.verdict == Verdict::equivalent && diff.verdict == Verdict::distinct &&
                                             diff.witness.has_value(),
                       diff.residual});
    }
    return out;
}

}  // namespace

RunResult run(const std::vector<std::string>& args, std::optional<std::string> env_format) {
    RunResult result;
    CLI::App app{"Curvature-adapted hypersurface toolkit: octonions, Cayley plane, tubes and theorem oracles",
                 "curvadapt"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::uint64_t seed = kDefaultSeed;
    std::string format;
    std::vector<std::string> tol_items;
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "md"}));
    app.add_option("--tol", tol_items, "tolerance override name=value (repeatable)");

    // Subcommand state.
    std::string space = "op2";
    std::string ambient = "op2";
    std::string core = "line";
    double radius = std::numbers::pi / 8;
    int samples = 10000;
    std::string alpha_grid = "0.2:1.35:24";
    std::string constraint = "ajj";
    std::string sign = "computed";
    std::string residual = "equation";
    int grid = 121;
    int m = 2;
    bool serial = false;
    std::string p_json;
    std::string q_json;
    std::string window_arg;
    std::string system_json;
    int kmax = 5;
    double t = 0.0;
    double alpha = std::numbers::pi / 3;

    auto* oct = app.add_subcommand("octonion-table", "signed 8x8 multiplication table");
    auto* spec = app.add_subcommand("jacobi-spectrum", "Jacobi operator spectrum at a random unit normal");
    spec->add_option("--space", space, "op2 or oh2")->check(CLI::IsMember({"op2", "oh2"}));
    auto* sect = app.add_subcommand("sectional-range", "sampled range of sectional curvature");
    sect->add_option("--space", space, "op2 or oh2")->check(CLI::IsMember({"op2", "oh2"}));
    sect->add_option("--samples", samples, "number of random planes")->check(CLI::PositiveNumber);
    auto* tube_cmd = app.add_subcommand("tube-table", "principal curvatures of a tube");
    tube_cmd->add_option("--ambient", ambient, "op2 or oh2")->check(CLI::IsMember({"op2", "oh2"}));
    tube_cmd->add_option("--core", core, "point, line, hp2 or horosphere");
    tube_cmd->add_option("--radius", radius, "tube radius (radians)");
    auto* t2 = app.add_subcommand("theorem2", "enumerate focal configurations in OP2");
    auto* t3 = app.add_subcommand("theorem3", "non-existence sweep in G2(C^{m+2})");
    t3->add_option("--alpha-grid", alpha_grid, "a:b:n inclusive grid of angles");
    t3->add_option("--constraint", constraint, "ajj, azz or ratio");
    t3->add_option("--sign", sign, "computed or verbatim")->check(CLI::IsMember({"computed", "verbatim"}));
    t3->add_option("--residual", residual, "equation or trajectory")
        ->check(CLI::IsMember({"equation", "trajectory"}));
    t3->add_option("--space", space, "compact or noncompact")->check(CLI::IsMember({"compact", "noncompact"}));
    t3->add_option("--grid", grid, "grid points per search axis")->check(CLI::Range(3, 2001));
    t3->add_option("--m", m, "quaternionic dimension")->check(CLI::Range(2, 16));
    t3->add_flag("--serial", serial, "use the serial kernel");
    auto* pm = app.add_subcommand("profile-match", "compare two mean-curvature profiles");
    pm->add_option("--p", p_json, "system p as JSON or @file")->required();
    pm->add_option("--q", q_json, "system q as JSON or @file")->required();
    pm->add_option("--window", window_arg, "comparison window a,b");
    auto* cas = app.add_subcommand("cascade", "power-sum derivative cascade");
    cas->add_option("--system", system_json, "system as JSON or @file")->required();
    cas->add_option("--kmax", kmax, "highest power")->check(CLI::Range(1, 32));
    cas->add_option("--t", t, "evaluation parameter");
    auto* gc = app.add_subcommand("grassmannian-check", "X1/X2 eigenstructure at a given alpha");
    gc->add_option("--m", m, "quaternionic dimension")->check(CLI::Range(2, 16));
    gc->add_option("--alpha", alpha, "alpha in radians");
    auto* st = app.add_subcommand("selftest", "run the invariant suite");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = kExitUsage;
        result.err = std::string("error: ") + e.what() + "\n";
        return result;
    }

    auto choose_format = [&](std::initializer_list<const char*> supported, const char* fallback) {
        auto ok = [&](const std::string& f) {
            return std::any_of(supported.begin(), supported.end(), [&](const char* s) { return f == s; });
        };
        if (!format.empty()) {
            if (!ok(format)) throw UsageError("format '" + format + "' is not supported by this subcommand");
            return format;
        }
        if (env_format && ok(*env_format)) return *env_format;
        return std::string(fallback);
    };

    try {
        const auto tol = parse_tolerances(tol_items);
        if (oct->parsed()) {
            const std::string f = choose_format({"json", "csv", "md"}, "json");
            result.out = f == "json" ? dump(report::octonion_table_json())
                                     : (f == "csv" ? report::octonion_table_csv() : report::octonion_table_md());
        } else if (spec->parsed()) {
            choose_format({"json"}, "json");
            const SpaceSign s = parse_space(space);
            Rng rng = substream(seed, 0);
            const auto xi = cayley::TangentPair::from_vector(random_unit_vector(rng, cayley::kDim));
            const Spectrum sp = cayley::jacobi_spectrum(xi, s, tol.at("eigen_gap"));
            result.out = dump(report::spectrum_json(sp, s, seed, xi));
        } else if (sect->parsed()) {
            choose_format({"json"}, "json");
            const SpaceSign s = parse_space(space);
            result.out = dump(report::sectional_json(sweep::sectional_range_parallel(s, samples, seed), s, seed));
        } else if (tube_cmd->parsed()) {
            const std::string f = choose_format({"csv", "json", "md"}, "csv");
            const tube::TubeDescriptor d{tube::parse_ambient(ambient), tube::parse_core(core), radius};
            const auto sys = tube::tube_spectrum(d);
            result.out = f == "json" ? dump(report::pcsystem_json(sys, d))
                                     : (f == "csv" ? report::pcsystem_csv(sys) : report::pcsystem_md(sys));
        } else if (t2->parsed()) {
            choose_format({"json"}, "json");
            const auto res = tube::theorem2_enumerate();
            result.out = dump(report::theorem2_json(res));
            result.exit_code = res.matches_catalog_rows && res.oracle_agrees ? kExitOk : kExitNegative;
        } else if (t3->parsed()) {
            choose_format({"json"}, "json");
            tube::SweepOptions opt;
            opt.constraint = tube::parse_constraint(constraint);
            opt.sign = sign == "verbatim" ? tube::RiccatiSign::verbatim : tube::RiccatiSign::computed;
            opt.kind = tube::parse_residual_kind(residual);
            if (space == "op2") space = "compact";
            opt.space = parse_space(space);
            opt.grid = grid;
            opt.m = m;
            opt.parallel = !serial;
            opt.floor_threshold = tol.at("floor");
            opt.refine_tol = tol.at("refine");
            const auto cert = tube::theorem3_sweep(tube::parse_alpha_grid(alpha_grid), opt);
            const auto eq = tube::theorem3_equality_branch(opt);
            result.out = dump(report::theorem3_json(cert, eq));
            result.exit_code = cert.verdict == Verdict::equivalent ? kExitOk : kExitNegative;
        } else if (pm->parsed()) {
            choose_format({"json"}, "json");
            const auto p = report::parse_system(read_json(p_json, "--p"), "p");
            const auto q = report::parse_system(read_json(q_json, "--q"), "q");
            iso::EquivalenceOptions eo;
            eo.pole_tol = tol.at("pole_tol");
            eo.residual_tol = tol.at("residual_tol");
            std::optional<iso::Window> w;
            if (!window_arg.empty()) w = parse_window(window_arg);
            const auto cert = iso::profiles_equivalent(p, q, w, eo);
            result.out = dump(report::certificate_json(cert));
            result.exit_code = cert.verdict == Verdict::equivalent ? kExitOk : kExitNegative;
        } else if (cas->parsed()) {
            choose_format({"json"}, "json");
            const auto sys = report::parse_system(read_json(system_json, "--system"), "system");
            const auto res = iso::power_sum_cascade(sys, kmax, t, tol.at("fd_step"));
            result.out = dump(report::cascade_json(res, kmax, t));
        } else if (gc->parsed()) {
            choose_format({"json"}, "json");
            const auto bundle = g2::StructureBundle::quaternionic_model(m);
            const auto xi = g2::xi_with_alpha(alpha, bundle);
            const auto dec = g2::alpha_of(xi, bundle);
            const auto pair = g2::hopf_eigenvectors(dec, xi, bundle);
            const auto ev = g2::hopf_eigenvalues(pair, g2::jacobi_operator_g2(xi, bundle));
            const double c = std::cos(dec.alpha);
            result.out = dump(Json{{"alpha", alpha},
                                   {"alpha_measured", dec.alpha},
                                   {"m", m},
                                   {"eigenvalue_x1", ev.mu1},
                                   {"eigenvalue_x2", ev.mu2},
                                   {"multiplicity_x1", ev.multiplicity1},
                                   {"multiplicity_x2", ev.multiplicity2},
                                   {"ratio", ev.mu1 / ev.mu2},
                                   {"ratio_expected", (1 + c) / (1 - c)},
                                   {"scale", std::abs(ev.mu1) / (1 + c)},
                                   {"residuals", Json{{"x1", ev.residual1},
                                                      {"x2", ev.residual2},
                                                      {"decomposition", dec.reconstruction_residual},
                                                      {"structure", bundle.verify().max()}}}});
        } else if (st->parsed()) {
            choose_format({"json"}, "json");
            Json checks = Json::array();
            bool all = true;
            for (const auto& c : selftest_checks()) {
                checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"value", c.value}});
                all = all && c.passed;
            }
            result.out = dump(Json{{"passed", all}, {"checks", checks}});
            result.exit_code = all ? kExitOk : kExitUsage;
            if (!all) result.err = "error: selftest failed\n";
        }
    } catch (const Error& e) {
        result.exit_code = kExitUsage;
        result.out.clear();
        result.err = std::string("error: ") + e.what() + "\n";
    } catch (const Json::exception& e) {
        result.exit_code = kExitUsage;
        result.out.clear();
        result.err = std::string("error: invalid JSON input: ") + e.what() + "\n";
    }
    return result;
}

}  // namespace curvadapt::cli
