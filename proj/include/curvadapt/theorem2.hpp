#pragma once

// Finite enumeration of focal configurations of curvature-adapted hypersurfaces
// with constant principal curvatures in OP^2.
//
// Along a normal geodesic the branches split into the K = 4 family (dimension 7,
// kappa = 2) and the K = 1 family (dimension 8, kappa = 1).  Measured from the
// focal manifold Q1 at t = 0, a branch is kappa cot(theta - kappa t) with theta
// in {0, pi/4, pi/2, 3pi/4}; theta = 0 marks a direction normal to Q1.  The
// second focal manifold Q2 sits at t = pi / (2g), g in {1, 2}.

#include "curvadapt/cayley_plane.hpp"
#include "curvadapt/tube_flow.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curvadapt::tube {

inline constexpr int kPhaseSlots = 4;  ///< theta = slot * pi / 4

struct FocalConfiguration {
    int g = 2;
    std::array<int, kPhaseSlots> four{};  ///< K = 4 family counts per phase slot, summing to 7
    std::array<int, kPhaseSlots> one{};   ///< K = 1 family counts per phase slot, summing to 8

    friend bool operator==(const FocalConfiguration&, const FocalConfiguration&) = default;
    friend auto operator<=>(const FocalConfiguration&, const FocalConfiguration&) = default;
};

enum class Rejection {
    none,
    stray_focal_point,          ///< a branch focalizes away from the focal times k pi / (2g)
    missing_focal_manifold,     ///< nothing focalizes at Q1 or at Q2
    focal_multiplicity_mismatch,///< focal multiplicity differs between t and t + pi/g
    nonzero_four_curvature,     ///< a K = 4 principal curvature of Q1 or Q2 is nonzero
    one_curvature_out_of_range, ///< a K = 1 principal curvature of Q1 is not in {1, 0, -1}
    focal_not_minimal,          ///< Q1 or Q2 has nonzero mean curvature
    no_totally_geodesic_focal,  ///< neither Q1 nor Q2 is totally geodesic
    not_in_catalog,             ///< the totally geodesic focal manifold is not curvature-adapted
};

const char* rejection_name(Rejection r);

/// What is known about one focal manifold of a configuration.
struct FocalManifold {
    double time = 0.0;
    int codimension_minus_one = 0;  ///< number of directions collapsing there
    int dimension = 0;
    int four_dim = 0;               ///< tangent directions in the K = 4 family
    int one_dim = 0;                ///< tangent directions in the K = 1 family
    bool totally_geodesic = false;
    double mean_curvature = 0.0;
    std::vector<double> four_curvatures;
    std::vector<double> one_curvatures;
};

/// Per-(family, slot) data from which every configuration is assembled.
struct BranchType {
    double kappa = 0.0;
    int slot = 0;
    std::vector<double> focal_times;  ///< zeros of the Jacobi field in [0, pi)
    double curvature_q1 = 0.0;        ///< meaningful when slot != 0
    std::array<double, 2> curvature_q2{};  ///< value at pi/2 (g = 1) and pi/4 (g = 2), if regular
    std::array<bool, 2> focal_at_q2{};
};

struct CatalogEntry {
    std::string name;  ///< "point", "OP1", "HP2"
    int four_dim = 0;
    int one_dim = 0;
    Core core = Core::point;
};

struct Survivor {
    FocalConfiguration config;
    FocalManifold q1;
    FocalManifold q2;
    std::string totally_geodesic_name;  ///< catalog entry matched
    bool geodesic_at_q1 = true;         ///< which focal manifold matched the catalog
    Core core = Core::point;
    double row_check_residual = 0.0;    ///< evolved configuration vs tube_spectrum(core)
};

struct Theorem2Result {
    int enumerated = 0;
    std::vector<Survivor> survivors;
    std::map<Rejection, int> rejections;
    std::vector<cayley::CurvatureAdaptedCheck> catalog_checks;
    std::vector<CatalogEntry> catalog;
    bool oracle_agrees = false;       ///< Jacobi-field integration reproduces the accepted set
    int oracle_disagreements = 0;
    bool matches_catalog_rows = false;  ///< survivor cores are exactly {point/line, hp2}
};

/// Branch data from the closed-form flows.
std::vector<BranchType> closed_form_branch_types();
/// Branch data from RK4 integration of Y'' + kappa^2 Y = 0 (independent of the closed forms).
std::vector<BranchType> integrated_branch_types(int steps = 1 << 14);

/// Curvature-adapted totally geodesic subspaces, computed from the Cayley tensor.
std::vector<CatalogEntry> computed_catalog(std::vector<cayley::CurvatureAdaptedCheck>* checks = nullptr);

/// Classify one configuration against the branch data and catalog.
Rejection classify(const FocalConfiguration& c, const std::vector<BranchType>& types,
                   const std::vector<CatalogEntry>& catalog, Survivor* out = nullptr);

/// All configurations: g in {1, 2} and every split of 7 and 8 over the four phase slots.
std::vector<FocalConfiguration> enumerate_configurations();

Theorem2Result theorem2_enumerate();

}  // namespace curvadapt::tube
