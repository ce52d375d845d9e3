#include "curvadapt/tube_flow.hpp"

#include "curvadapt/errors.hpp"

#include <cmath>
#include <numbers>

namespace curvadapt::tube {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

bool same_magnitude(double a, double b) { return std::abs(std::abs(a) - std::abs(b)) <= 1e-12 * std::abs(b); }

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::cot: return "cot";
        case Regime::coth: return "coth";
        case Regime::tanh: return "tanh";
        case Regime::constant: return "const";
        case Regime::flat_pole: return "flat";
        case Regime::flat_zero: return "flat";
    }
    return "?";
}

CurvatureBranch CurvatureBranch::compact(double kappa, double theta, int multiplicity, std::string tag) {
    if (!(kappa > 0.0)) throw InvalidArgument("compact branch needs kappa > 0");
    if (!(theta > 0.0 && theta < kPi)) throw InvalidArgument("compact branch needs theta in (0, pi)");
    return {kappa, 1, theta, multiplicity, std::move(tag)};
}

CurvatureBranch CurvatureBranch::from_value(double kappa, int space_sign, double value, int multiplicity,
                                            std::string tag) {
    if (kappa < 0.0) throw InvalidArgument("kappa must be non-negative");
    if (space_sign > 0 && kappa > 0.0) {
        // cot(theta) = value / kappa with theta in (0, pi).
        const double theta = std::atan2(kappa, value);
        return {kappa, 1, theta, multiplicity, std::move(tag)};
    }
    return {kappa, kappa == 0.0 ? 0 : space_sign, value, multiplicity, std::move(tag)};
}

Regime CurvatureBranch::regime() const {
    if (kappa == 0.0 || space_sign == 0) return phase == 0.0 ? Regime::flat_zero : Regime::flat_pole;
    if (space_sign > 0) return Regime::cot;
    if (same_magnitude(phase, kappa)) return Regime::constant;
    return std::abs(phase) > kappa ? Regime::coth : Regime::tanh;
}

double CurvatureBranch::initial_value() const {
    return regime() == Regime::cot ? kappa / std::tan(phase) : phase;
}

std::pair<double, double> regularity_interval(const CurvatureBranch& b) {
    switch (b.regime()) {
        case Regime::cot:
            return {(b.phase - kPi) / b.kappa, b.phase / b.kappa};
        case Regime::coth: {
            const double pole = std::atanh(b.kappa / b.phase) / b.kappa;
            return pole > 0.0 ? std::pair{-kInf, pole} : std::pair{pole, kInf};
        }
        case Regime::flat_pole: {
            const double pole = 1.0 / b.phase;
            return pole > 0.0 ? std::pair{-kInf, pole} : std::pair{pole, kInf};
        }
        case Regime::tanh:
        case Regime::constant:
        case Regime::flat_zero:
            return {-kInf, kInf};
    }
    return {-kInf, kInf};
}

double evolve(const CurvatureBranch& b, double t) {
    const auto [lo, hi] = regularity_interval(b);
    if (!(t > lo && t < hi)) {
        throw FocalPointError("principal curvature flow evaluated at or beyond a focal point",
                              t >= hi ? hi : lo);
    }
    switch (b.regime()) {
        case Regime::cot:
            return b.kappa / std::tan(b.phase - b.kappa * t);
        case Regime::coth: {
            const double phi = std::atanh(b.kappa / b.phase);
            return b.kappa / std::tanh(phi - b.kappa * t);
        }
        case Regime::tanh: {
            const double phi = std::atanh(b.phase / b.kappa);
            return b.kappa * std::tanh(phi - b.kappa * t);
        }
        case Regime::constant:
            return b.phase;
        case Regime::flat_pole:
            return b.phase / (1.0 - b.phase * t);
        case Regime::flat_zero:
            return 0.0;
    }
    return 0.0;
}

double focal_radius(const CurvatureBranch& b) { return regularity_interval(b).second; }

CurvatureBranch shift(const CurvatureBranch& b, double s) {
    CurvatureBranch out = b;
    if (b.regime() == Regime::cot) {
        const auto [lo, hi] = regularity_interval(b);
        if (!(s > lo && s < hi)) throw FocalPointError("cannot re-base a branch across a focal point", hi);
        out.phase = b.phase - b.kappa * s;
    } else {
        out.phase = evolve(b, s);
    }
    return out;
}

int PCSystem::total_multiplicity() const {
    int n = 0;
    for (const auto& b : branches) n += b.multiplicity;
    return n;
}

void PCSystem::validate() const {
    for (const auto& b : branches) {
        if (b.multiplicity <= 0) throw InvalidArgument("branch multiplicity must be positive");
    }
    if (dimension && total_multiplicity() != *dimension) {
        throw InvalidArgument("multiplicities sum to " + std::to_string(total_multiplicity()) +
                              ", expected " + std::to_string(*dimension));
    }
}

double mean_curvature(const PCSystem& sys, double t) {
    double h = 0.0;
    for (std::size_t i = 0; i < sys.branches.size(); ++i) {
        try {
            h += sys.branches[i].multiplicity * evolve(sys.branches[i], t);
        } catch (const FocalPointError& e) {
            throw FocalPointError("branch " + std::to_string(i) + " focalizes", e.focal_radius(),
                                  static_cast<int>(i));
        }
    }
    return h;
}

// Tubes ---------------------------------------------------------------------

double jacobi_tube_curvature(double kappa_sq, Boundary boundary, double r) {
    if (!(r > 0.0)) throw InvalidArgument("tube radius must be positive");
    const double k = std::sqrt(std::abs(kappa_sq));
    if (kappa_sq > 0.0) {
        if (boundary == Boundary::tangent) {
            if (k * r >= kPi / 2) throw FocalPointError("Jacobi field cos(kappa r) vanishes", kPi / (2 * k));
            return -k * std::tan(k * r);
        }
        if (k * r >= kPi) throw FocalPointError("Jacobi field sin(kappa r) vanishes", kPi / k);
        return k / std::tan(k * r);
    }
    if (kappa_sq < 0.0) {
        return boundary == Boundary::tangent ? k * std::tanh(k * r) : k / std::tanh(k * r);
    }
    return boundary == Boundary::tangent ? 0.0 : 1.0 / r;
}

namespace {

struct RowSpec {
    const char* tag;
    double kappa_sq;  // compact value; negated for the dual
    Boundary boundary;
    int multiplicity;
};

std::vector<RowSpec> rows_for(Core core) {
    switch (core) {
        case Core::point:
            return {{"lambda1", 1.0, Boundary::normal, 8}, {"alpha1", 4.0, Boundary::normal, 7}};
        case Core::line:
            return {{"lambda2", 1.0, Boundary::tangent, 8}, {"alpha1", 4.0, Boundary::normal, 7}};
        case Core::hp2:
            return {{"lambda1", 1.0, Boundary::normal, 4},
                    {"lambda2", 1.0, Boundary::tangent, 4},
                    {"alpha1", 4.0, Boundary::normal, 3},
                    {"alpha2", 4.0, Boundary::tangent, 4}};
        case Core::horosphere:
            return {};
    }
    return {};
}

}  // namespace

double core_focal_distance(Ambient ambient, Core core) {
    if (ambient == Ambient::oh2) return kInf;
    double d = kInf;
    for (const auto& row : rows_for(core)) {
        const double k = std::sqrt(row.kappa_sq);
        d = std::min(d, row.boundary == Boundary::tangent ? kPi / (2 * k) : kPi / k);
    }
    return d;
}

PCSystem tube_spectrum(const TubeDescriptor& d) {
    PCSystem sys;
    sys.dimension = 15;
    if (d.core == Core::horosphere) {
        if (d.ambient != Ambient::oh2) throw InvalidArgument("horospheres exist only in OH2");
        sys.branches = {CurvatureBranch::from_value(1.0, -1, 1.0, 8, "lambda1"),
                        CurvatureBranch::from_value(2.0, -1, 2.0, 7, "alpha1")};
        return sys;
    }
    if (!(d.radius > 0.0)) throw InvalidArgument("tube radius must be positive");
    const double focal = core_focal_distance(d.ambient, d.core);
    if (d.radius >= focal) {
        throw FocalPointError("tube radius reaches the focal set of the core", focal);
    }
    const int sign = d.ambient == Ambient::op2 ? 1 : -1;
    for (const auto& row : rows_for(d.core)) {
        const double value = jacobi_tube_curvature(sign * row.kappa_sq, row.boundary, d.radius);
        sys.branches.push_back(
            CurvatureBranch::from_value(std::sqrt(row.kappa_sq), sign, value, row.multiplicity, row.tag));
    }
    return sys;
}

double minimal_tube_radius(Ambient ambient, Core core, double lo, double hi, double tol) {
    auto h = [&](double r) { return mean_curvature(tube_spectrum({ambient, core, r}), 0.0); };
    double hlo = h(lo);
    const double hhi = h(hi);
    if (std::signbit(hlo) == std::signbit(hhi)) {
        throw InvalidArgument("mean curvature does not change sign on the bracket");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double hm = h(mid);
        if (hm == 0.0) return mid;
        if (std::signbit(hm) == std::signbit(hlo)) {
            lo = mid;
            hlo = hm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

const char* ambient_name(Ambient a) { return a == Ambient::op2 ? "op2" : "oh2"; }

const char* core_name(Core c) {
    switch (c) {
        case Core::point: return "point";
        case Core::line: return "line";
        case Core::hp2: return "hp2";
        case Core::horosphere: return "horosphere";
    }
    return "?";
}

Ambient parse_ambient(const std::string& s) {
    if (s == "op2") return Ambient::op2;
    if (s == "oh2") return Ambient::oh2;
    throw InvalidArgument("unknown ambient '" + s + "' (expected op2 or oh2)");
}

Core parse_core(const std::string& s) {
    if (s == "point") return Core::point;
    if (s == "line" || s == "op1" || s == "oh1") return Core::line;
    if (s == "hp2" || s == "hh2") return Core::hp2;
    if (s == "horosphere") return Core::horosphere;
    throw InvalidArgument("unknown core '" + s + "' (expected point, line, hp2 or horosphere)");
}

}  // namespace curvadapt::tube
