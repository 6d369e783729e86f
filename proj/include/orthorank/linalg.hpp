#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "orthorank/errors.hpp"

namespace orthorank {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Thresholds that turn the exact conditions (zero products, rank, PSD) into
/// floating-point tests.
struct Tolerances {
  double orth_tol = 1e-9;      ///< Frobenius threshold for a "zero" product or block
  double rank_rel_tol = 1e-8;  ///< singular values above rank_rel_tol * sigma_max count
  double psd_tol = 1e-9;       ///< smallest admissible eigenvalue is -psd_tol

  void validate() const {
    if (orth_tol < 0 || rank_rel_tol < 0 || psd_tol < 0) {
      throw PreconditionError("tolerances must be nonnegative");
    }
  }
};

/// r-dimensional subspace of C^d held through a d x r basis matrix.
///
/// The constructor stores the matrix as given so that certificates read from
/// disk can be inspected; verifiers measure orthonormality_residual().
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(CMatrix basis) : basis_(std::move(basis)) {}

  /// Throws PreconditionError unless `basis` has orthonormal columns within tol.
  static Subspace from_orthonormal(CMatrix basis, const Tolerances& tol = {});

  [[nodiscard]] const CMatrix& basis() const { return basis_; }
  [[nodiscard]] int ambient() const { return static_cast<int>(basis_.rows()); }
  [[nodiscard]] int dim() const { return static_cast<int>(basis_.cols()); }
  /// ||X* X - I||_F
  [[nodiscard]] double orthonormality_residual() const;

 private:
  CMatrix basis_;
};

/// Orthonormal basis of the column span. Throws on rank-deficient input.
[[nodiscard]] Subspace orthonormalize(const CMatrix& m, const Tolerances& tol = {});
/// Closest matrix with orthonormal columns, X (X* X)^{-1/2}; keeps the span and
/// leaves an already orthonormal X unchanged.
[[nodiscard]] CMatrix lowdin_orthonormalize(const CMatrix& x);

[[nodiscard]] Eigen::VectorXd singular_values(const CMatrix& m);
[[nodiscard]] int rank(const CMatrix& m, const Tolerances& tol = {});
[[nodiscard]] double hermitian_residual(const CMatrix& m);
/// Throws PreconditionError for a non-square matrix.
[[nodiscard]] bool is_psd(const CMatrix& m, const Tolerances& tol = {});
/// Smallest eigenvalue of the Hermitian part.
[[nodiscard]] double min_eigenvalue(const CMatrix& m);

/// ||X1* X2||_F
[[nodiscard]] double overlap_norm(const Subspace& s1, const Subspace& s2);
/// ||X1* X2||_F <= orth_tol * sqrt(r1 r2). Throws on ambient mismatch.
[[nodiscard]] bool subspaces_orthogonal(const Subspace& s1, const Subspace& s2,
                                        const Tolerances& tol = {});
/// The threshold used by subspaces_orthogonal for dimensions r1, r2.
[[nodiscard]] double orthogonality_threshold(int r1, int r2, const Tolerances& tol);

[[nodiscard]] CMatrix direct_sum(const std::vector<CMatrix>& blocks);
[[nodiscard]] CMatrix gram(const CMatrix& x);

/// X with rank(a) rows and X* X = a, from the Hermitian eigendecomposition
/// (eigenvalues below rank_rel_tol * lambda_max are dropped). Throws if a is
/// not PSD.
[[nodiscard]] CMatrix psd_factor(const CMatrix& a, const Tolerances& tol = {});

[[nodiscard]] CMatrix projector_from_basis(const Subspace& s);
/// Orthonormal basis of range(p). Throws unless p is a Hermitian idempotent.
[[nodiscard]] Subspace basis_from_projector(const CMatrix& p, const Tolerances& tol = {});

/// Unitary U with U m = [e_1 ... e_l] for a d x l matrix m with orthonormal
/// columns. The completion adds standard basis vectors greedily (largest
/// residual first, lowest index on ties), so the result is deterministic.
[[nodiscard]] CMatrix align_to_standard(const CMatrix& m, const Tolerances& tol = {});

/// Columns e_{first+1} .. e_{first+count} of I_d (0-based `first`).
[[nodiscard]] CMatrix standard_columns(int d, int first, int count);

/// Block-diagonal square matrix; a dense matrix is the one-block case.
///
/// Projectors built as direct sums keep their blocks so that products and
/// ranks cost the block sizes, not the full dimension.
class BlockDiagonal {
 public:
  BlockDiagonal() = default;
  explicit BlockDiagonal(CMatrix dense);
  explicit BlockDiagonal(std::vector<CMatrix> blocks);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const std::vector<CMatrix>& blocks() const { return blocks_; }
  [[nodiscard]] CMatrix dense() const { return direct_sum(blocks_); }
  [[nodiscard]] bool same_partition(const BlockDiagonal& other) const;

  [[nodiscard]] double hermitian_residual() const;
  /// ||P^2 - P||_F
  [[nodiscard]] double idempotent_residual() const;
  /// Rank with the relative cutoff taken against the largest singular value
  /// over all blocks.
  [[nodiscard]] int rank(const Tolerances& tol = {}) const;

  /// k copies of a followed by b.
  static BlockDiagonal repeat_then(const BlockDiagonal& a, int k, const BlockDiagonal& b);

 private:
  std::vector<CMatrix> blocks_;
  int dim_ = 0;
};

/// ||A B||_F, blockwise when the partitions agree.
[[nodiscard]] double product_norm(const BlockDiagonal& a, const BlockDiagonal& b);
/// ||A - B||_F, blockwise when the partitions agree.
[[nodiscard]] double difference_norm(const BlockDiagonal& a, const BlockDiagonal& b);

// Seeded random helpers for searches and property tests.
[[nodiscard]] CMatrix random_gaussian(int rows, int cols, std::mt19937_64& rng);
[[nodiscard]] CMatrix random_orthonormal(int d, int r, std::mt19937_64& rng);
[[nodiscard]] CMatrix random_unitary(int d, std::mt19937_64& rng);

}  // namespace orthorank
