#include "curvadapt/errors.hpp"
#include "curvadapt/isoparametric.hpp"
#include "curvadapt/random.hpp"
#include "support/profile_pairs.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace curvadapt;
using namespace curvadapt::iso;
using tube::CurvatureBranch;
using testing::raw_branch;

namespace {

constexpr double kPi = std::numbers::pi;

ProfileSystem make(std::vector<CurvatureBranch> branches, const char* label = "p") {
    ProfileSystem s;
    s.system.branches = std::move(branches);
    s.label = label;
    return s;
}

bool equivalent(const ProfileSystem& a, const ProfileSystem& b) {
    return profiles_equivalent(a, b).verdict == Verdict::equivalent;
}

}  // namespace

TEST_CASE("profile examples") {
    CHECK(std::abs(profile(make({CurvatureBranch::compact(1, kPi / 2)}), 0.0)) < 1e-15);
    CHECK(profile(make({CurvatureBranch::compact(1, kPi / 4, 2)}), 0.0) == doctest::Approx(2.0).epsilon(1e-15));

    const double r = kPi / 8;
    const ProfileSystem hp2{tube::tube_spectrum({tube::Ambient::op2, tube::Core::hp2, r}), "hp2"};
    const double expected = 4 / std::tan(r) - 4 * std::tan(r) + 3 * 2 / std::tan(2 * r) - 4 * 2 * std::tan(2 * r);
    CHECK(profile(hp2, 0.0) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(profile(hp2, 0.0) == doctest::Approx(tube::mean_curvature(hp2.system, 0.0)).epsilon(1e-14));
}

TEST_CASE("profile continues analytically past poles") {
    const auto s = make({CurvatureBranch::compact(1, kPi / 2, 3)});
    CHECK_THROWS_AS(tube::mean_curvature(s.system, 2.0), FocalPointError);
    CHECK(profile(s, 2.0) == doctest::Approx(3 / std::tan(kPi / 2 - 2.0)).epsilon(1e-14));
    CHECK(profile(s, 1.0 + kPi) == doctest::Approx(profile(s, 1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(profile(s, kPi / 2), FocalPointError);

    const auto coth = make({CurvatureBranch::from_value(1, -1, 2.0, 2)});
    const double pole = std::atanh(0.5);
    CHECK(profile(coth, pole + 0.3) == doctest::Approx(2 / std::tanh(-0.3)).epsilon(1e-12));
}

TEST_CASE("extract_poles examples") {
    const auto a = extract_poles(make({CurvatureBranch::compact(2, kPi / 2, 7)}), {0, kPi});
    REQUIRE(a.poles.size() == 2);
    CHECK(a.poles[0].location == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(a.poles[1].location == doctest::Approx(3 * kPi / 4).epsilon(1e-15));
    CHECK(a.poles[0].weight == 7);
    CHECK(a.poles[1].weight == 7);
    CHECK(a.poles[0].kappa == 2.0);

    const auto b = extract_poles(make({CurvatureBranch::compact(1, kPi / 2, 8)}), {0, kPi});
    REQUIRE(b.poles.size() == 1);
    CHECK(b.poles[0].location == doctest::Approx(kPi / 2));
    CHECK(b.poles[0].weight == 8);

    const auto u = extract_poles(
        make({CurvatureBranch::compact(2, kPi / 2, 7), CurvatureBranch::compact(1, kPi / 2, 8),
              CurvatureBranch::compact(1, kPi / 4, 1)}),
        {0, kPi});
    REQUIRE(u.poles.size() == 3);
    CHECK(u.poles[0].location == doctest::Approx(kPi / 4));
    CHECK(u.poles[0].weight == 8);
    CHECK(u.poles[1].location == doctest::Approx(kPi / 2));
    CHECK(u.poles[1].weight == 8);
    CHECK(u.poles[2].weight == 7);
    for (std::size_t i = 1; i < u.poles.size(); ++i) CHECK(u.poles[i].location > u.poles[i - 1].location);

    CHECK(extract_poles(make({CurvatureBranch::from_value(1, -1, 0.5)}), {-5, 5}).poles.empty());
    const auto flat = extract_poles(make({CurvatureBranch::from_value(0, 0, 2.0, 3)}), {-5, 5});
    REQUIRE(flat.poles.size() == 1);
    CHECK(flat.poles[0].location == doctest::Approx(0.5));
    CHECK_THROWS_AS(extract_poles(make({}), {1, 0}), InvalidArgument);
}

TEST_CASE("profiles_equivalent examples") {
    const auto p = make({CurvatureBranch::compact(1, 0.7, 3), CurvatureBranch::compact(2, 1.9, 2),
                         CurvatureBranch::compact(1, 2.5, 1)});
    SUBCASE("identical systems") {
        const auto c = profiles_equivalent(p, p);
        CHECK(c.verdict == Verdict::equivalent);
        CHECK(c.residual == 0.0);
        CHECK_FALSE(c.witness);
        CHECK(c.multiset_equal);
        CHECK(c.grid_equal);
        CHECK(c.poles_matched > 0);
    }
    SUBCASE("perturbed phase gives a pole witness") {
        auto q = p;
        q.system.branches[1].phase += 1e-2;
        const auto c = profiles_equivalent(p, q);
        CHECK(c.verdict == Verdict::distinct);
        REQUIRE(c.witness);
        std::vector<Pole> all = extract_poles(p, c.window).poles;
        for (const auto& x : extract_poles(q, c.window).poles) all.push_back(x);
        CHECK(std::any_of(all.begin(), all.end(),
                          [&](const Pole& x) { return std::abs(x.location - c.witness->location) < 1e-12; }));
        CHECK(c.witness->weight_p + c.witness->weight_q == 2);
        CHECK_FALSE(c.multiset_equal);
        CHECK_FALSE(c.grid_equal);
    }
    SUBCASE("permuted and regrouped branches") {
        const auto q = make({CurvatureBranch::compact(1, 2.5, 1), CurvatureBranch::compact(1, 0.7, 2),
                             raw_branch(2, 1.9 - kPi, 2), raw_branch(1, 0.7 + kPi, 1)},
                            "q");
        const auto c = profiles_equivalent(p, q);
        CHECK(c.verdict == Verdict::equivalent);
        CHECK(c.residual <= 1e-9);
        CHECK(c.multiset_equal);
        CHECK(c.grid_equal);
    }
    SUBCASE("different multiplicity") {
        auto q = p;
        q.system.branches[2].multiplicity = 2;
        const auto c = profiles_equivalent(p, q);
        CHECK(c.verdict == Verdict::distinct);
        REQUIRE(c.witness);
        CHECK(c.witness->weight_p == 1);
        CHECK(c.witness->weight_q == 2);
    }
}

TEST_CASE("innermost pole is compared first") {
    const auto p = make({CurvatureBranch::compact(1, 0.3), CurvatureBranch::compact(1, 1.2)});
    const auto q = make({CurvatureBranch::compact(1, 0.3), CurvatureBranch::compact(1, 1.4)}, "q");
    const auto c = profiles_equivalent(p, q, Window{-1.0, 2.0});
    REQUIRE(c.witness);
    CHECK(c.witness->location == doctest::Approx(1.2));
    CHECK(c.witness->weight_p == 1);
    CHECK(c.witness->weight_q == 0);
    CHECK(c.poles_matched == 1);
}

TEST_CASE("smooth-part mismatch without a pole witness") {
    const auto p = make({CurvatureBranch::compact(1, 1.0)});
    const auto q = make({CurvatureBranch::compact(1, 1.0), CurvatureBranch::from_value(1, -1, 1.0)}, "q");
    const auto c = profiles_equivalent(p, q);
    CHECK(c.verdict == Verdict::distinct);
    CHECK_FALSE(c.witness);
    CHECK(c.residual > 1e-3);
    CHECK_FALSE(c.note.empty());
}

TEST_CASE("noncompact branches and the unsupported regime") {
    const auto p = make({CurvatureBranch::from_value(1, -1, 2.0, 2), CurvatureBranch::from_value(2, -1, -3.0, 1)});
    const auto q = make({CurvatureBranch::from_value(2, -1, -3.0, 1), CurvatureBranch::from_value(1, -1, 2.0, 1),
                         CurvatureBranch::from_value(1, -1, 2.0, 1)},
                        "q");
    CHECK(profiles_equivalent(p, q).verdict == Verdict::equivalent);
    auto r = q;
    r.system.branches[0] = CurvatureBranch::from_value(2, -1, -3.001, 1);
    CHECK(profiles_equivalent(p, r).verdict == Verdict::distinct);

    const auto t = make({CurvatureBranch::from_value(1, -1, 0.5)});
    CHECK_THROWS_AS(profiles_equivalent(t, t), UnsupportedRegimeError);
    CHECK_THROWS_AS(profiles_equivalent(p, t), UnsupportedRegimeError);
}

TEST_CASE("random pairs: grid equality, multiset equality and pole stripping agree") {
    int equal = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto pair = testing::random_pair(kDefaultSeed, i);
        const auto c = profiles_equivalent(pair.p, pair.q);
        const bool stripped = c.verdict == Verdict::equivalent;
        CAPTURE(i);
        CHECK(c.grid_equal == c.multiset_equal);
        CHECK(stripped == c.multiset_equal);
        if (pair.kind == testing::PairKind::same) CHECK(stripped);
        if (pair.kind == testing::PairKind::perturbed) CHECK_FALSE(stripped);
        if (!stripped) CHECK((c.witness || c.residual > 1e-9));
        equal += stripped ? 1 : 0;
    }
    CHECK(equal > 250);
    CHECK(equal < 750);
}

TEST_CASE("equivalence relation on random triples") {
    for (std::uint64_t i = 0; i < 200; ++i) {
        Rng rng = substream(7, i);
        const auto a = testing::random_system(rng, "a");
        const auto b = testing::regroup(a, rng, "b");
        const auto c = (i % 2 == 0) ? testing::regroup(b, rng, "c") : testing::random_system(rng, "c");
        CAPTURE(i);
        CHECK(equivalent(a, a));
        CHECK(equivalent(a, b));
        CHECK(equivalent(b, a));
        CHECK(equivalent(b, c) == equivalent(c, b));
        if (equivalent(a, b) && equivalent(b, c)) CHECK(equivalent(a, c));
        CHECK(equivalent(a, c) == equivalent(b, c));
    }
}

TEST_CASE("cot 2x identity: equal profiles with different branch multisets") {
    const double theta = 0.4;
    const auto p = make({CurvatureBranch::compact(1, theta), CurvatureBranch::compact(1, theta + kPi / 2)});
    const auto q = make({CurvatureBranch::compact(2, 2 * theta)}, "q");
    const auto c = profiles_equivalent(p, q);
    CHECK(c.verdict == Verdict::equivalent);
    CHECK(c.grid_equal);
    CHECK_FALSE(c.multiset_equal);
    CHECK(p.system.total_multiplicity() != q.system.total_multiplicity());
    const auto fam = isoparametric_verdict({p, q}, true);
    CHECK(fam.verdict == Verdict::contradiction);
}

TEST_CASE("isoparametric_verdict") {
    const auto base = make({CurvatureBranch::compact(1, 0.9, 8), CurvatureBranch::compact(2, 1.3, 7)});
    SUBCASE("identical family") {
        const auto c = isoparametric_verdict({base, base, base}, true);
        CHECK(c.verdict == Verdict::equivalent);
        CHECK(c.multiset_equal);
    }
    SUBCASE("one deviating phase") {
        auto dev = base;
        dev.system.branches[1].phase = 1.31;
        const auto c = isoparametric_verdict({base, base, dev}, false);
        CHECK(c.verdict == Verdict::distinct);
        CHECK(c.note.find("member 2") != std::string::npos);
    }
    SUBCASE("equal mean curvature at t = 0 but different multisets") {
        // Move phase of the kappa = 2 branch and solve for the kappa = 1 phase keeping H(0).
        const double h0 = profile(base, 0.0);
        const double theta2 = 1.1;
        const double lam1 = (h0 - 7 * 2 / std::tan(theta2)) / 8;
        const auto other = make({CurvatureBranch::from_value(1, 1, lam1, 8), CurvatureBranch::compact(2, theta2, 7)});
        REQUIRE(profile(other, 0.0) == doctest::Approx(h0).epsilon(1e-12));
        const auto c = isoparametric_verdict({base, other}, true);
        CHECK(c.verdict == Verdict::distinct);
        CHECK_FALSE(c.multiset_equal);
    }
    SUBCASE("nonconstant K data") {
        const auto other = make({CurvatureBranch::compact(1, 0.9, 7), CurvatureBranch::compact(2, 1.3, 8)});
        CHECK(isoparametric_verdict({base, other}, true).verdict == Verdict::contradiction);
        CHECK(isoparametric_verdict({base, other}, false).verdict == Verdict::distinct);
    }
    CHECK_THROWS_AS(isoparametric_verdict({}, true), InvalidArgument);
}

TEST_CASE("newton_recover examples") {
    const auto a = newton_recover({2, 2}, 2);
    REQUIRE(a.size() == 2);
    CHECK(a[0] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(a[1] == doctest::Approx(1.0).epsilon(1e-8));
    const auto b = newton_recover({0, 2}, 2);
    REQUIRE(b.size() == 2);
    CHECK(b[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(b[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(newton_recover({}, 0).empty());
    CHECK(newton_recover({3.5}, 1) == std::vector<double>{3.5});
    // x^2 + 1: p1 = 0, p2 = -2.
    CHECK_THROWS_AS(newton_recover({0, -2}, 2), InconsistentPowerSumsError);
    CHECK_THROWS_AS(newton_recover({1}, 2), InvalidArgument);
    CHECK_THROWS_AS(newton_recover({1}, -1), InvalidArgument);
}

TEST_CASE("newton_recover round-trips random multisets") {
    for (int n = 1; n <= 8; ++n) {
        for (std::uint64_t trial = 0; trial < 50; ++trial) {
            Rng rng = substream(static_cast<std::uint64_t>(n), trial);
            std::vector<double> xs;
            for (int i = 0; i < n; ++i) xs.push_back(uniform(rng, -3, 3));
            if (trial % 5 == 0 && n > 1) xs[1] = xs[0];
            std::vector<double> p(static_cast<std::size_t>(n), 0.0);
            for (int k = 1; k <= n; ++k) {
                for (const double x : xs) p[static_cast<std::size_t>(k - 1)] += std::pow(x, k);
            }
            const auto got = newton_recover(p, n);
            std::sort(xs.begin(), xs.end());
            REQUIRE(got.size() == xs.size());
            std::vector<double> q(static_cast<std::size_t>(n), 0.0);
            for (int k = 1; k <= n; ++k) {
                for (const double x : got) q[static_cast<std::size_t>(k - 1)] += std::pow(x, k);
            }
            CAPTURE(n);
            CAPTURE(trial);
            for (std::size_t k = 0; k < p.size(); ++k) {
                CHECK(std::abs(q[k] - p[k]) / std::max(1.0, std::abs(p[k])) <= 1e-8);
            }
            if (trial % 5 != 0) {
                for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(got[i] - xs[i]) <= 1e-6);
            }
        }
    }
}

TEST_CASE("power sums of a system") {
    const auto s = make({CurvatureBranch::compact(1, kPi / 4, 2), CurvatureBranch::compact(2, kPi / 2, 3)});
    const auto p = power_sums(s, 3, 0.0);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == doctest::Approx(2.0));
    CHECK(p[1] == doctest::Approx(2.0));
    CHECK(p[2] == doctest::Approx(2.0));
    const auto rec = newton_recover(power_sums(make({CurvatureBranch::compact(1, 0.6), CurvatureBranch::compact(2, 2.0),
                                                     CurvatureBranch::compact(1, 1.7)}),
                                               3, 0.2),
                                    3);
    CHECK(rec.size() == 3);
}

TEST_CASE("power_sum_cascade") {
    SUBCASE("single branch at its zero") {
        const auto r = power_sum_cascade(make({CurvatureBranch::compact(1, kPi / 2)}), 1, 0.0);
        CHECK(r.predicted[0] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(r.derivative[0] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(r.residuals[0] <= 1e-6);
    }
    SUBCASE("random systems") {
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 100; ++i) {
            Rng rng = substream(11, i);
            auto s = testing::random_system(rng, "s");
            if (i % 3 == 1) s.system.branches.push_back(CurvatureBranch::from_value(1, -1, uniform(rng, 1.5, 3), 2));
            if (i % 3 == 2) s.system.branches.push_back(CurvatureBranch::from_value(1, -1, uniform(rng, -0.5, 0.5), 1));
            const double t = uniform(rng, -0.05, 0.05);
            for (const double r : power_sum_cascade(s, 5, t).residuals) worst = std::max(worst, r);
        }
        CHECK(worst <= 1e-6);
    }
    SUBCASE("CP^n-shaped system") {
        // One kappa = 2 Hopf branch and 2n - 2 branches with kappa = 1; on the kappa = 1
        // part p2' = 2 p3 + 2 p1, the quoted -c/2 p1 + 2 p3 with c = -4 kappa^2.
        const auto rest = make({CurvatureBranch::compact(1, 0.8, 2), CurvatureBranch::compact(1, 2.1, 2)});
        const auto r = power_sum_cascade(rest, 3, 0.1);
        const double c = -4.0;
        CHECK(r.predicted[1] == doctest::Approx(-c / 2 * r.power_sums[0] + 2 * r.power_sums[2]).epsilon(1e-13));
        CHECK(r.residuals[1] <= 1e-6);
        auto full = rest;
        full.system.branches.push_back(CurvatureBranch::compact(2, 1.2, 1));
        const auto f = power_sum_cascade(full, 3, 0.1);
        for (const double x : f.residuals) CHECK(x <= 1e-6);
    }
    CHECK_THROWS_AS(power_sum_cascade(make({CurvatureBranch::compact(1, 1.0)}), 0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(power_sum_cascade(make({CurvatureBranch::compact(1, kPi / 2)}), 2, kPi / 2), FocalPointError);
}

TEST_CASE("reduced phase") {
    CHECK(reduced_phase(0.3) == doctest::Approx(0.3));
    CHECK(reduced_phase(kPi / 2) == doctest::Approx(kPi / 2));
    CHECK(reduced_phase(-kPi / 2 - 0.1) == doctest::Approx(kPi / 2 - 0.1));
    CHECK(reduced_phase(3.0 + 2 * kPi) == doctest::Approx(3.0 - kPi));
    for (double x = -10; x < 10; x += 0.37) {
        const double y = reduced_phase(x);
        CHECK(y > -kPi / 2);
        CHECK(y <= kPi / 2);
        CHECK(std::abs(std::remainder(x - y, kPi)) < 1e-12);
    }
}

TEST_CASE("phase monotonicity for equal pole locations") {
    Rng rng = substream(13, 0);
    for (int i = 0; i < 200; ++i) {
        const double kq = uniform(rng, 0.5, 2.0);
        const double kp = kq * uniform(rng, 1.05, 3.0);
        const double r = -uniform(rng, 0.01, 0.99) * kPi / (2 * kp);
        const double t_max = -r + kPi;
        CAPTURE(i);
        CHECK_FALSE(phase_sign_split(kp, kq, r, t_max, 4096, false));
        const auto t0 = phase_sign_split(kp, kq, r, t_max, 4096, true);
        REQUIRE(t0);
        const double a = reduced_phase(kp * (r - *t0));
        const double b = reduced_phase(kq * (r - *t0));
        CHECK(a > 0.0);
        CHECK(b < 0.0);
    }
    CHECK_FALSE(phase_sign_split(1.5, 1.5, -0.3, 5.0));
}
