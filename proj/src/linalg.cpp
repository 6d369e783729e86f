#include "orthorank/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace orthorank {

Subspace Subspace::from_orthonormal(CMatrix basis, const Tolerances& tol) {
  Subspace s(std::move(basis));
  if (s.dim() > s.ambient()) throw PreconditionError("subspace dimension exceeds ambient dimension");
  if (s.orthonormality_residual() > tol.orth_tol) {
    throw PreconditionError("basis columns are not orthonormal");
  }
  return s;
}

double Subspace::orthonormality_residual() const {
  const auto r = basis_.cols();
  return (basis_.adjoint() * basis_ - CMatrix::Identity(r, r)).norm();
}

Eigen::VectorXd singular_values(const CMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<CMatrix>(m).singularValues();
}

int rank(const CMatrix& m, const Tolerances& tol) {
  const Eigen::VectorXd sv = singular_values(m);
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cutoff = tol.rank_rel_tol * sv(0);
  return static_cast<int>((sv.array() > cutoff).count());
}

Subspace orthonormalize(const CMatrix& m, const Tolerances& tol) {
  if (m.cols() > m.rows()) throw PreconditionError("orthonormalize: more columns than rows");
  if (rank(m, tol) < m.cols()) throw PreconditionError("orthonormalize: columns are linearly dependent");
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
  return Subspace(std::move(q));
}

CMatrix lowdin_orthonormalize(const CMatrix& x) {
  if (x.cols() == 0) return x;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x.adjoint() * x);
  const Eigen::VectorXd& lam = es.eigenvalues();
  if (lam.minCoeff() <= 1e-14 * std::max(1.0, lam.maxCoeff())) {
    throw PreconditionError("lowdin_orthonormalize: columns are linearly dependent");
  }
  const Eigen::VectorXd inv_sqrt = lam.array().rsqrt();
  const CMatrix& v = es.eigenvectors();
  return x * (v * inv_sqrt.asDiagonal() * v.adjoint());
}

double hermitian_residual(const CMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("matrix is not square");
  return (m - m.adjoint()).norm();
}

double min_eigenvalue(const CMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("matrix is not square");
  if (m.size() == 0) return 0.0;
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) throw PreconditionError("is_psd: matrix is not square");
  return hermitian_residual(m) <= tol.orth_tol && min_eigenvalue(m) >= -tol.psd_tol;
}

double overlap_norm(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient() != s2.ambient()) throw PreconditionError("subspaces live in different ambient spaces");
  return (s1.basis().adjoint() * s2.basis()).norm();
}

double orthogonality_threshold(int r1, int r2, const Tolerances& tol) {
  return tol.orth_tol * std::sqrt(static_cast<double>(r1) * static_cast<double>(r2));
}

bool subspaces_orthogonal(const Subspace& s1, const Subspace& s2, const Tolerances& tol) {
  return overlap_norm(s1, s2) <= orthogonality_threshold(s1.dim(), s2.dim(), tol);
}

CMatrix direct_sum(const std::vector<CMatrix>& blocks) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

CMatrix gram(const CMatrix& x) { return x.adjoint() * x; }

CMatrix psd_factor(const CMatrix& a, const Tolerances& tol) {
  if (!is_psd(a, tol)) throw PreconditionError("psd_factor: matrix is not positive semidefinite");
  const Eigen::Index n = a.rows();
  if (n == 0) return CMatrix(0, 0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (a + a.adjoint()));
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double top = lam(n - 1);
  if (top <= 0.0) return CMatrix(0, n);
  const double cutoff = tol.rank_rel_tol * top;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = n - 1; i >= 0; --i)
    if (lam(i) > cutoff) keep.push_back(i);
  CMatrix x(static_cast<Eigen::Index>(keep.size()), n);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const Eigen::Index i = keep[k];
    x.row(static_cast<Eigen::Index>(k)) = std::sqrt(lam(i)) * es.eigenvectors().col(i).adjoint();
  }
  return x;
}

CMatrix projector_from_basis(const Subspace& s) { return s.basis() * s.basis().adjoint(); }

Subspace basis_from_projector(const CMatrix& p, const Tolerances& tol) {
  if (p.rows() != p.cols()) throw PreconditionError("basis_from_projector: matrix is not square");
  if (hermitian_residual(p) > tol.orth_tol) throw PreconditionError("basis_from_projector: matrix is not Hermitian");
  if ((p * p - p).norm() > tol.orth_tol) throw PreconditionError("basis_from_projector: matrix is not idempotent");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (p + p.adjoint()));
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::Index n = p.rows();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (lam(i) > 0.5) ++r;
  if (r == 0) throw PreconditionError("basis_from_projector: zero projector has no basis");
  // Eigenvalues ascend; the top r eigenvectors span the range.
  CMatrix basis = es.eigenvectors().rightCols(r).rowwise().reverse();
  return Subspace(std::move(basis));
}

CMatrix standard_columns(int d, int first, int count) {
  CMatrix out = CMatrix::Zero(d, count);
  for (int k = 0; k < count; ++k) out(first + k, k) = 1.0;
  return out;
}

CMatrix align_to_standard(const CMatrix& m, const Tolerances& tol) {
  const Eigen::Index d = m.rows();
  const Eigen::Index l = m.cols();
  if (l > d) throw PreconditionError("align_to_standard: more columns than rows");
  if ((m.adjoint() * m - CMatrix::Identity(l, l)).norm() > tol.orth_tol) {
    throw PreconditionError("align_to_standard: columns are not orthonormal");
  }
  CMatrix w(d, d);
  w.leftCols(l) = m;
  std::vector<char> used(d, 0);
  for (Eigen::Index filled = l; filled < d; ++filled) {
    Eigen::Index pick = -1;
    double best = -1.0;
    Eigen::VectorXcd best_vec;
    for (Eigen::Index k = 0; k < d; ++k) {
      if (used[k]) continue;
      Eigen::VectorXcd v = Eigen::VectorXcd::Unit(d, k);
      for (int pass = 0; pass < 2; ++pass) v -= w.leftCols(filled) * (w.leftCols(filled).adjoint() * v);
      const double norm = v.norm();
      if (norm > best + 1e-12) {
        best = norm;
        pick = k;
        best_vec = std::move(v);
      }
    }
    used[pick] = 1;
    w.col(filled) = best_vec / best;
  }
  return w.adjoint();
}

BlockDiagonal::BlockDiagonal(CMatrix dense) {
  if (dense.rows() != dense.cols()) throw PreconditionError("block-diagonal matrix must be square");
  dim_ = static_cast<int>(dense.rows());
  blocks_.push_back(std::move(dense));
}

BlockDiagonal::BlockDiagonal(std::vector<CMatrix> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    if (b.rows() != b.cols()) throw PreconditionError("diagonal blocks must be square");
    dim_ += static_cast<int>(b.rows());
  }
}

bool BlockDiagonal::same_partition(const BlockDiagonal& other) const {
  if (blocks_.size() != other.blocks_.size()) return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].rows() != other.blocks_[i].rows()) return false;
  return true;
}

double BlockDiagonal::hermitian_residual() const {
  double sq = 0.0;
  for (const auto& b : blocks_) sq += (b - b.adjoint()).squaredNorm();
  return std::sqrt(sq);
}

double BlockDiagonal::idempotent_residual() const {
  double sq = 0.0;
  for (const auto& b : blocks_) sq += (b * b - b).squaredNorm();
  return std::sqrt(sq);
}

int BlockDiagonal::rank(const Tolerances& tol) const {
  std::vector<Eigen::VectorXd> all;
  double top = 0.0;
  for (const auto& b : blocks_) {
    all.push_back(singular_values(b));
    if (all.back().size() > 0) top = std::max(top, all.back()(0));
  }
  if (top <= 0.0) return 0;
  const double cutoff = tol.rank_rel_tol * top;
  int r = 0;
  for (const auto& sv : all) r += static_cast<int>((sv.array() > cutoff).count());
  return r;
}

BlockDiagonal BlockDiagonal::repeat_then(const BlockDiagonal& a, int k, const BlockDiagonal& b) {
  std::vector<CMatrix> blocks;
  blocks.reserve(a.blocks_.size() * static_cast<std::size_t>(k) + b.blocks_.size());
  for (int i = 0; i < k; ++i) blocks.insert(blocks.end(), a.blocks_.begin(), a.blocks_.end());
  blocks.insert(blocks.end(), b.blocks_.begin(), b.blocks_.end());
  return BlockDiagonal(std::move(blocks));
}

double product_norm(const BlockDiagonal& a, const BlockDiagonal& b) {
  if (a.dim() != b.dim()) throw PreconditionError("product_norm: dimension mismatch");
  if (a.same_partition(b)) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.blocks().size(); ++i) sq += (a.blocks()[i] * b.blocks()[i]).squaredNorm();
    return std::sqrt(sq);
  }
  return (a.dense() * b.dense()).norm();
}

double difference_norm(const BlockDiagonal& a, const BlockDiagonal& b) {
  if (a.dim() != b.dim()) throw PreconditionError("difference_norm: dimension mismatch");
  if (a.same_partition(b)) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.blocks().size(); ++i) sq += (a.blocks()[i] - b.blocks()[i]).squaredNorm();
    return std::sqrt(sq);
  }
  return (a.dense() - b.dense()).norm();
}

CMatrix random_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

CMatrix random_orthonormal(int d, int r, std::mt19937_64& rng) {
  if (r > d) throw PreconditionError("random_orthonormal: r exceeds d");
  const CMatrix g = random_gaussian(d, r, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(d, r);
}

CMatrix random_unitary(int d, std::mt19937_64& rng) { return random_orthonormal(d, d, rng); }

}  // namespace orthorank
