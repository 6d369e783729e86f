#pragma once

#include <cstdint>
#include <optional>

#include "orthorank/fit.hpp"

namespace orthorank {

// Numerical searches for upper-bound witnesses. A result is always a
// verified object; an empty optional says nothing about existence.

/// (d;r)-OSR by block-coordinate descent on Σ_{uv∈E} ||X_u* X_v||_F^2: each
/// X_u becomes the r smallest eigenvectors of Σ_{v~u} X_v X_v*.
[[nodiscard]] std::optional<SubspaceRepresentation> heuristic_osr_search(const Graph& g, int r, int d,
                                                                         std::uint64_t seed, int iters = 2000,
                                                                         int restarts = 32,
                                                                         const Tolerances& tol = {});

/// PSD r-fitting matrix of rank <= d by alternating projection between the
/// rank-d PSD matrices and the affine fitting set.
[[nodiscard]] std::optional<FitMatrix> heuristic_fit_search(const Graph& g, int r, int d, std::uint64_t seed,
                                                            int iters = 2000, int restarts = 32,
                                                            const Tolerances& tol = {});

}  // namespace orthorank
