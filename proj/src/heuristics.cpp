#include "orthorank/heuristics.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace orthorank {
namespace {

constexpr int kStallWindow = 100;
constexpr double kStallRatio = 0.999;

double osr_residual(const Graph& g, const std::vector<CMatrix>& x) {
  double total = 0.0;
  for (auto [a, b] : g.edges()) total += (x[a].adjoint() * x[b]).squaredNorm();
  return total;
}

// Projection onto the fitting set. Edge blocks that nearly vanished are pushed
// back out to 10 orth_tol so the iteration cannot settle on a non-edge.
void project_affine(const Graph& g, int r, CMatrix& a, double floor, std::mt19937_64& rng) {
  const int n = g.order();
  for (int i = 0; i < n; ++i) {
    a.block(i * r, i * r, r, r).setIdentity();
    for (int j = i + 1; j < n; ++j) {
      auto blk = a.block(i * r, j * r, r, r);
      if (!g.adjacent(i, j)) {
        blk.setZero();
      } else {
        const double norm = blk.norm();
        if (norm == 0.0) {
          blk = random_gaussian(r, r, rng);
          blk *= floor / blk.norm();
        } else if (norm < floor) {
          blk *= floor / norm;
        }
      }
      a.block(j * r, i * r, r, r) = blk.adjoint();
    }
  }
}

// Nearest PSD matrix of rank <= d.
CMatrix project_low_rank_psd(const CMatrix& a, int d) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (a + a.adjoint()));
  const long m = a.rows();
  const long keep = std::min<long>(d, m);
  Eigen::VectorXd vals = es.eigenvalues().tail(keep).cwiseMax(0.0);
  const CMatrix v = es.eigenvectors().rightCols(keep);
  return v * vals.asDiagonal() * v.adjoint();
}

}  // namespace

std::optional<SubspaceRepresentation> heuristic_osr_search(const Graph& g, int r, int d, std::uint64_t seed,
                                                           int iters, int restarts, const Tolerances& tol) {
  if (r < 1 || d < r) throw PreconditionError("heuristic_osr_search: need 1 <= r <= d");
  const int n = g.order();
  std::mt19937_64 rng(seed);
  const double target = tol.orth_tol * tol.orth_tol;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    std::vector<CMatrix> x(n);
    for (auto& xi : x) xi = random_orthonormal(d, r, rng);
    double residual = osr_residual(g, x);
    double checkpoint = residual;
    for (int it = 0; it < iters && residual >= target; ++it) {
      for (int u = 0; u < n; ++u) {
        if (g.degree(u) == 0) continue;
        CMatrix m = CMatrix::Zero(d, d);
        for (int v : g.neighbors(u)) m.noalias() += x[v] * x[v].adjoint();
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
        x[u] = es.eigenvectors().leftCols(r);
      }
      residual = osr_residual(g, x);
      if ((it + 1) % kStallWindow == 0) {
        if (residual > kStallRatio * checkpoint) break;
        checkpoint = residual;
      }
    }
    if (residual >= target) continue;
    SubspaceRepresentation rep{g, d, r, {}, false};
    for (auto& xi : x) rep.subspaces.emplace_back(std::move(xi));
    if (verify_osr(rep, tol).valid) return rep;
  }
  return std::nullopt;
}

std::optional<FitMatrix> heuristic_fit_search(const Graph& g, int r, int d, std::uint64_t seed, int iters,
                                              int restarts, const Tolerances& tol) {
  const int n = g.order();
  if (r < 1 || d < r || d > n * r) throw PreconditionError("heuristic_fit_search: need r <= d <= n r");
  const long m = static_cast<long>(n) * r;
  if (d == m && g.size() == 0) return FitMatrix{g, r, CMatrix::Identity(m, m)};
  std::mt19937_64 rng(seed);
  const double floor = 10.0 * tol.orth_tol;
  constexpr double kAccept = 1e-9;
  constexpr double kPolish = 1e-13;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    const CMatrix x0 = random_gaussian(d, static_cast<int>(m), rng);
    CMatrix a = gram(x0);
    CMatrix p = a;
    double residual = std::numeric_limits<double>::infinity();
    double checkpoint = residual;
    for (int it = 0; it < iters; ++it) {
      project_affine(g, r, a, floor, rng);
      p = project_low_rank_psd(a, d);
      residual = (p - a).norm();
      if (residual < kPolish) break;
      a = p;
      if ((it + 1) % kStallWindow == 0) {
        if (residual > kStallRatio * checkpoint) break;
        checkpoint = residual;
      }
    }
    if (!(residual < kAccept)) continue;
    // p is PSD of rank <= d and within kAccept of the fitting set; rebuild it
    // from unit-normalized factor blocks so the diagonal is exactly I_r.
    try {
      const CMatrix factor = psd_factor(p, tol);
      CMatrix x(factor.rows(), m);
      for (int i = 0; i < n; ++i) {
        const long c = static_cast<long>(i) * r;
        x.middleCols(c, r) = lowdin_orthonormalize(factor.middleCols(c, r));
      }
      FitMatrix fm{g, r, gram(x)};
      if (r_fits(fm, tol).valid && is_psd(fm.matrix, tol) && rank(fm.matrix, tol) <= d) return fm;
    } catch (const std::exception&) {
      // rank-deficient block: counts as a failed restart
    }
  }
  return std::nullopt;
}

}  // namespace orthorank
