#include "curvadapt/theorem2.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace curvadapt;
using namespace curvadapt::tube;

namespace {

constexpr double kPi = std::numbers::pi;

const BranchType& type(const std::vector<BranchType>& t, int family, int slot) {
    return t[static_cast<std::size_t>(family * kPhaseSlots + slot)];
}

BranchType& type(std::vector<BranchType>& t, int family, int slot) {
    return t[static_cast<std::size_t>(family * kPhaseSlots + slot)];
}

}  // namespace

TEST_CASE("configuration count") {
    const auto all = enumerate_configurations();
    // 2 values of g, C(10,3) splits of 7 and C(11,3) splits of 8 over four slots.
    CHECK(all.size() == 2u * 120u * 165u);
    for (const auto& c : all) {
        CHECK(c.four[0] + c.four[1] + c.four[2] + c.four[3] == 7);
        CHECK(c.one[0] + c.one[1] + c.one[2] + c.one[3] == 8);
    }
}

TEST_CASE("closed-form branch data") {
    const auto t = closed_form_branch_types();
    REQUIRE(t.size() == 8);
    // kappa = 2, theta = pi/2: poles at pi/4 and 3pi/4, curvature 0 on Q1.
    const auto& b = type(t, 0, 2);
    REQUIRE(b.focal_times.size() == 2);
    CHECK(b.focal_times[0] == doctest::Approx(kPi / 4));
    CHECK(b.focal_times[1] == doctest::Approx(3 * kPi / 4));
    CHECK(b.curvature_q1 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(b.focal_at_q2[1]);
    // kappa = 1, theta = pi/4: Q1 curvature 1, regular at pi/2 with value cot(-pi/4) = -1.
    const auto& o = type(t, 1, 1);
    CHECK(o.curvature_q1 == doctest::Approx(1.0));
    CHECK_FALSE(o.focal_at_q2[0]);
    CHECK(o.curvature_q2[0] == doctest::Approx(-1.0));
    // Slot 0 focalizes at Q1.
    CHECK(type(t, 1, 0).focal_times.front() == 0.0);
}

TEST_CASE("integrated branch data agrees with the closed forms") {
    const auto a = closed_form_branch_types();
    const auto b = integrated_branch_types();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].focal_times.size() == b[i].focal_times.size());
        for (std::size_t k = 0; k < a[i].focal_times.size(); ++k) {
            CHECK(a[i].focal_times[k] == doctest::Approx(b[i].focal_times[k]).epsilon(1e-9));
        }
        CHECK(a[i].curvature_q1 == doctest::Approx(b[i].curvature_q1).epsilon(1e-12));
        for (std::size_t g = 0; g < 2; ++g) {
            CHECK(a[i].focal_at_q2[g] == b[i].focal_at_q2[g]);
            if (!a[i].focal_at_q2[g]) {
                CHECK(std::abs(a[i].curvature_q2[g] - b[i].curvature_q2[g]) <= 1e-8);
            }
        }
    }
}

TEST_CASE("catalog is computed from the tensor") {
    std::vector<cayley::CurvatureAdaptedCheck> checks;
    const auto cat = computed_catalog(&checks);
    REQUIRE(cat.size() == 3);
    CHECK(cat[0].name == "point");
    CHECK(cat[1].name == "OP1");
    CHECK(cat[1].four_dim == 0);
    CHECK(cat[1].one_dim == 8);
    CHECK(cat[2].name == "HP2");
    CHECK(cat[2].four_dim == 4);
    CHECK(cat[2].one_dim == 4);
    CHECK(checks.size() == 6);
}

TEST_CASE("enumeration survivors match the tube table rows") {
    const auto res = theorem2_enumerate();
    CHECK(res.enumerated == 39600);
    CHECK(res.oracle_agrees);
    CHECK(res.oracle_disagreements == 0);
    CHECK(res.matches_catalog_rows);
    REQUIRE(res.survivors.size() == 4);
    int total = 0;
    for (const auto& [r, n] : res.rejections) total += n;
    CHECK(total == 39600);
    CHECK(res.rejections.at(Rejection::none) == 4);

    const auto& s0 = res.survivors[0];
    CHECK(s0.config == FocalConfiguration{1, {7, 0, 0, 0}, {0, 0, 8, 0}});
    CHECK(s0.totally_geodesic_name == "OP1");
    CHECK(s0.core == Core::line);
    const auto& s1 = res.survivors[1];
    CHECK(s1.config == FocalConfiguration{1, {7, 0, 0, 0}, {8, 0, 0, 0}});
    CHECK(s1.totally_geodesic_name == "point");
    const auto& s2 = res.survivors[2];
    CHECK(s2.config == FocalConfiguration{2, {3, 0, 4, 0}, {4, 0, 4, 0}});
    CHECK(s2.totally_geodesic_name == "HP2");
    CHECK(s2.geodesic_at_q1);
    const auto& s3 = res.survivors[3];
    CHECK(s3.config == FocalConfiguration{2, {4, 0, 3, 0}, {0, 4, 0, 4}});
    CHECK(s3.totally_geodesic_name == "HP2");
    CHECK_FALSE(s3.geodesic_at_q1);
    for (const auto& s : res.survivors) {
        CHECK(s.row_check_residual <= 1e-9);
        // Both focal manifolds are minimal.
        CHECK(std::abs(s.q1.mean_curvature) <= 1e-9);
        CHECK(std::abs(s.q2.mean_curvature) <= 1e-9);
        // Every K = 4 principal curvature of the focal manifolds vanishes.
        for (const double v : s.q1.four_curvatures) CHECK(std::abs(v) <= 1e-9);
        for (const double v : s.q2.four_curvatures) CHECK(std::abs(v) <= 1e-9);
    }
    // g = 1 survivors all have a totally geodesic focal manifold.
    for (const auto& s : res.survivors) {
        if (s.config.g == 1) CHECK((s.q1.totally_geodesic || s.q2.totally_geodesic));
    }
}

TEST_CASE("filters reject hand-built configurations") {
    const auto types = closed_form_branch_types();
    const auto cat = computed_catalog();
    // kappa = 2 with theta = pi/4 focalizes at pi/8, off the focal lattice.
    CHECK(classify({2, {0, 7, 0, 0}, {8, 0, 0, 0}}, types, cat) == Rejection::stray_focal_point);
    // Everything focalizes only at Q2.
    CHECK(classify({2, {0, 0, 7, 0}, {0, 8, 0, 0}}, types, cat) == Rejection::missing_focal_manifold);
    // Accepted configuration.
    Survivor s;
    CHECK(classify({2, {3, 0, 4, 0}, {4, 0, 4, 0}}, types, cat, &s) == Rejection::none);
    CHECK(s.core == Core::hp2);
}

TEST_CASE("curvature filters act on the supplied branch data") {
    const auto cat = computed_catalog();
    const FocalConfiguration hp2{2, {3, 0, 4, 0}, {4, 0, 4, 0}};
    {
        auto types = closed_form_branch_types();
        type(types, 0, 2).curvature_q1 = 0.5;
        CHECK(classify(hp2, types, cat) == Rejection::nonzero_four_curvature);
    }
    {
        auto types = closed_form_branch_types();
        type(types, 1, 2).curvature_q1 = 0.5;
        CHECK(classify(hp2, types, cat) == Rejection::one_curvature_out_of_range);
    }
    {
        auto types = closed_form_branch_types();
        type(types, 1, 2).curvature_q1 = 1.0;
        CHECK(classify(hp2, types, cat) == Rejection::focal_not_minimal);
    }
    {
        std::vector<CatalogEntry> empty;
        CHECK(classify(hp2, closed_form_branch_types(), empty) == Rejection::not_in_catalog);
    }
}
