#pragma once

// Data-parallel kernels.  Every kernel has a serial reference and an OpenMP
// version; per-trial random streams come from substream(seed, trial), so both
// produce bitwise-identical results.

#include "curvadapt/space_sign.hpp"
#include "curvadapt/theorem3.hpp"

#include <cstdint>
#include <vector>

namespace curvadapt::sweep {

/// n equally spaced points from lo to hi inclusive.
struct GridSpec {
    int n = 0;
    double lo = 0.0;
    double hi = 0.0;
    double at(int i) const { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); }
    double spacing() const { return n <= 1 ? hi - lo : (hi - lo) / (n - 1); }
};

/// relation_residual(prob, grid.at(i), grid.at(j)) at index i * n + j.
std::vector<double> residual_grid_serial(const tube::RelationProblem& prob, const GridSpec& grid);
std::vector<double> residual_grid_parallel(const tube::RelationProblem& prob, const GridSpec& grid);

struct SectionalStats {
    double min = 0.0;
    double max = 0.0;
    int samples = 0;
};

/// Sectional curvature of the Cayley plane over `planes` random planes.
SectionalStats sectional_range_serial(SpaceSign s, int planes, std::uint64_t seed);
SectionalStats sectional_range_parallel(SpaceSign s, int planes, std::uint64_t seed);

struct SpectrumBatchStats {
    int trials = 0;
    int mismatches = 0;              ///< spectra other than {4s: 7, s: 8, 0: 1}
    double max_residual = 0.0;       ///< max per-vector |K v - mu v|
    double max_value_error = 0.0;    ///< max |computed - exact| eigenvalue
    double max_orthonormality = 0.0;
};

/// Jacobi spectra of the Cayley plane at `count` random unit normals.
SpectrumBatchStats spectrum_batch_serial(SpaceSign s, int count, std::uint64_t seed);
SpectrumBatchStats spectrum_batch_parallel(SpaceSign s, int count, std::uint64_t seed);

}  // namespace curvadapt::sweep
