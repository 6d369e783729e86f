#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "orthorank/representations.hpp"

namespace orthorank {

/// nr x nr matrix viewed as n x n blocks of size r x r; block (i, j) belongs
/// to vertices i and j of `graph` in declaration order.
struct FitMatrix {
  Graph graph;
  int r = 0;
  CMatrix matrix;

  [[nodiscard]] auto block(int i, int j) const { return matrix.block(i * r, j * r, r, r); }
};

/// Hermitian, A_ii = I_r, A_ij = 0 exactly on non-edges (Frobenius <= orth_tol).
[[nodiscard]] VerificationReport r_fits(const FitMatrix& fm, const Tolerances& tol = {});
/// As r_fits but each A_ii only has to be diagonal with entries > orth_tol.
[[nodiscard]] VerificationReport weakly_r_fits(const FitMatrix& fm, const Tolerances& tol = {});

/// D A D with D_i = A_ii^{-1/2}. Input must be PSD and weakly fit.
[[nodiscard]] FitMatrix normalize_weak_fit(const FitMatrix& fm, const Tolerances& tol = {});

/// X* X for X = [X_1 | ... | X_n]. Input must pass verify_fosr.
[[nodiscard]] FitMatrix fosr_to_fit(const SubspaceRepresentation& rep, const Tolerances& tol = {});
/// (rank A; r)-FOSR read off a factor A = X* X. Input must be PSD and r-fit.
[[nodiscard]] SubspaceRepresentation fit_to_fosr(const FitMatrix& fm, const Tolerances& tol = {});

/// A_1 ⊕ ... ⊕ A_t on the disjoint union of the graphs.
[[nodiscard]] FitMatrix direct_sum_fits(const std::vector<FitMatrix>& parts, const Tolerances& tol = {});

struct UnionCombine {
  FitMatrix fit;
  double beta = 0.0;
  int attempts = 0;
};

/// Â1 + β Â2 on g = G1 ∪ G2, where Âk embeds a_k into g's vertex order.
/// β comes from `draw` until no block that is nonzero in a summand vanishes
/// in the sum; throws SearchExhausted after max_attempts draws.
[[nodiscard]] UnionCombine union_combine(const FitMatrix& a1, const FitMatrix& a2, const Graph& g,
                                         const std::function<double()>& draw, int max_attempts = 32,
                                         const Tolerances& tol = {});
/// β ~ uniform(0.5, 1.5) from a generator seeded with `seed`.
[[nodiscard]] UnionCombine union_combine(const FitMatrix& a1, const FitMatrix& a2, const Graph& g,
                                         std::uint64_t seed, int max_attempts = 32, const Tolerances& tol = {});

}  // namespace orthorank
