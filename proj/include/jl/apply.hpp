#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "jl/constructions.hpp"
#include "jl/core.hpp"

namespace jl {

/// Counts stored transform entries read during application.
struct WorkCounter {
  std::uint64_t entries_touched = 0;
};

/// y = R x in float64. Each output coordinate accumulates contributions in
/// ascending order of the input's support, so a sparse x and its densified
/// copy produce identical sums. Throws std::invalid_argument on a dimension
/// mismatch.
///
/// GraphSparse with sparse x reads exactly nnz(x) * s stored entries.
std::vector<double> apply(const Transform& transform, const InputVector& x);
std::vector<double> apply(const Transform& transform, const InputVector& x, WorkCounter& counter);

/// Tolerance on ||x||_2 accepted by distortion().
inline constexpr double kUnitNormTolerance = 1e-9;

/// ||Rx||^2 - 1. Throws std::invalid_argument unless | ||x||_2 - 1 | <= 1e-9.
double distortion(const Transform& transform, const InputVector& x);

/// distortion() for every vector, in input order. `threads` == 0 resolves via
/// resolve_threads(). Output is independent of the worker count.
std::vector<DistortionSample> distortion_batch(const Transform& transform, std::span<const InputVector> xs,
                                               std::size_t transform_instance = 0, std::size_t threads = 1);

}  // namespace jl
