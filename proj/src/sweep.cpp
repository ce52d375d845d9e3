#include "curvadapt/sweep.hpp"

#include "curvadapt/cayley_plane.hpp"
#include "curvadapt/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace curvadapt::sweep {

namespace {

double sectional_trial(SpaceSign s, std::uint64_t seed, int i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    const auto x = cayley::TangentPair::from_vector(gaussian_vector(rng, cayley::kDim));
    const auto y = cayley::TangentPair::from_vector(gaussian_vector(rng, cayley::kDim));
    return cayley::sectional_curvature(x, y, s);
}

SpectrumBatchStats spectrum_trial(SpaceSign s, std::uint64_t seed, int i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    const auto xi = cayley::TangentPair::from_vector(random_unit_vector(rng, cayley::kDim));
    const Spectrum spec = cayley::jacobi_spectrum(xi, s);
    const double sg = sign_value(s);

    SpectrumBatchStats st;
    st.trials = 1;
    st.max_residual = spec.max_residual;
    st.max_orthonormality = spec.orthonormality_error;
    const auto* zero = spec.find(0.0);
    const auto* four = spec.find(4.0 * sg);
    const auto* one = spec.find(1.0 * sg);
    const bool ok = spec.groups.size() == 3 && zero && four && one && zero->multiplicity == 1 &&
                    four->multiplicity == 7 && one->multiplicity == 8;
    st.mismatches = ok ? 0 : 1;
    for (const auto& g : spec.groups) {
        const double exact = std::abs(g.value) < 0.5 ? 0.0 : (std::abs(g.value) < 2.5 ? sg : 4.0 * sg);
        st.max_value_error = std::max(st.max_value_error, std::abs(g.value - exact));
    }
    return st;
}

void merge(SpectrumBatchStats& acc, const SpectrumBatchStats& t) {
    acc.trials += t.trials;
    acc.mismatches += t.mismatches;
    acc.max_residual = std::max(acc.max_residual, t.max_residual);
    acc.max_value_error = std::max(acc.max_value_error, t.max_value_error);
    acc.max_orthonormality = std::max(acc.max_orthonormality, t.max_orthonormality);
}

}  // namespace

std::vector<double> residual_grid_serial(const tube::RelationProblem& prob, const GridSpec& grid) {
    std::vector<double> out(static_cast<std::size_t>(grid.n) * static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        for (int j = 0; j < grid.n; ++j) {
            out[static_cast<std::size_t>(i) * static_cast<std::size_t>(grid.n) + static_cast<std::size_t>(j)] =
                tube::relation_residual(prob, grid.at(i), grid.at(j));
        }
    }
    return out;
}

std::vector<double> residual_grid_parallel(const tube::RelationProblem& prob, const GridSpec& grid) {
    const long total = static_cast<long>(grid.n) * grid.n;
    std::vector<double> out(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
    for (long k = 0; k < total; ++k) {
        const int i = static_cast<int>(k / grid.n);
        const int j = static_cast<int>(k % grid.n);
        out[static_cast<std::size_t>(k)] = tube::relation_residual(prob, grid.at(i), grid.at(j));
    }
    return out;
}

SectionalStats sectional_range_serial(SpaceSign s, int planes, std::uint64_t seed) {
    SectionalStats st{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), planes};
    for (int i = 0; i < planes; ++i) {
        const double k = sectional_trial(s, seed, i);
        st.min = std::min(st.min, k);
        st.max = std::max(st.max, k);
    }
    return st;
}

SectionalStats sectional_range_parallel(SpaceSign s, int planes, std::uint64_t seed) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : lo) reduction(max : hi)
    for (int i = 0; i < planes; ++i) {
        const double k = sectional_trial(s, seed, i);
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    return {lo, hi, planes};
}

SpectrumBatchStats spectrum_batch_serial(SpaceSign s, int count, std::uint64_t seed) {
    SpectrumBatchStats acc;
    for (int i = 0; i < count; ++i) merge(acc, spectrum_trial(s, seed, i));
    return acc;
}

SpectrumBatchStats spectrum_batch_parallel(SpaceSign s, int count, std::uint64_t seed) {
    std::vector<SpectrumBatchStats> per(static_cast<std::size_t>(std::max(count, 0)));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) per[static_cast<std::size_t>(i)] = spectrum_trial(s, seed, i);
    SpectrumBatchStats acc;
    for (const auto& t : per) merge(acc, t);
    return acc;
}

}  // namespace curvadapt::sweep
