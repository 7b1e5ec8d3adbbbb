#pragma once

#include "warplab/submanifolds.hpp"

#include <cstddef>

namespace warplab::kernels {

/// Block size of the deterministic reduction. Blocks are summed left to right,
/// block sums are combined by a fixed pairwise tree, so the result does not depend
/// on the number of threads.
constexpr std::size_t kBlock = 256;

double deterministic_sum(const double* x, std::size_t n);

GeometricMoments moments_parallel(const SubmanifoldMesh& mesh, const WarpProfile& p);

/// Reference implementation: one sequential loop, naive accumulation.
GeometricMoments moments_serial(const SubmanifoldMesh& mesh, const WarpProfile& p);

} // namespace warplab::kernels
