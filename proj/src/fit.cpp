#include "orthorank/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace orthorank {
namespace {

// Shape, Hermitian and off-diagonal pattern; diagonal blocks are left to the caller.
bool check_common(const FitMatrix& fm, const Tolerances& tol, VerificationReport& report) {
  const long expected = static_cast<long>(fm.graph.order()) * fm.r;
  if (fm.r < 1 || fm.matrix.rows() != expected || fm.matrix.cols() != expected) {
    report.add("", "", "shape", std::abs(static_cast<double>(fm.matrix.rows() - expected)) +
                                    std::abs(static_cast<double>(fm.matrix.cols() - expected)));
    return false;
  }
  if (!fm.matrix.allFinite()) {
    report.add("", "", "finite", 0.0);
    return false;
  }
  const double herm = hermitian_residual(fm.matrix);
  if (herm > tol.orth_tol) report.add("", "", "hermitian", herm);
  const Graph& g = fm.graph;
  for (int i = 0; i < g.order(); ++i) {
    for (int j = i + 1; j < g.order(); ++j) {
      const double norm = fm.block(i, j).norm();
      if (g.adjacent(i, j)) {
        if (norm <= tol.orth_tol) report.add(g.label(i), g.label(j), "edge-block-nonzero", norm);
      } else if (norm > tol.orth_tol) {
        report.add(g.label(i), g.label(j), "non-edge-block-zero", norm);
      }
    }
  }
  return true;
}

std::string first_violation(const VerificationReport& report) {
  if (report.violations.empty()) return "valid";
  const auto& v = report.violations.front();
  return v.condition + (v.u.empty() ? "" : " at " + v.u + (v.v.empty() ? "" : "," + v.v)) + " (residual " +
         std::to_string(v.residual) + ")";
}

void require_psd(const FitMatrix& fm, const Tolerances& tol, const std::string& who) {
  if (!is_psd(fm.matrix, tol)) {
    throw PreconditionError(who + ": matrix is not PSD (min eigenvalue " + std::to_string(min_eigenvalue(fm.matrix)) +
                            ")");
  }
}

}  // namespace

VerificationReport r_fits(const FitMatrix& fm, const Tolerances& tol) {
  VerificationReport report;
  if (!check_common(fm, tol, report)) return report;
  const CMatrix id = CMatrix::Identity(fm.r, fm.r);
  for (int i = 0; i < fm.graph.order(); ++i) {
    const double res = (fm.block(i, i) - id).norm();
    if (res > tol.orth_tol) report.add(fm.graph.label(i), "", "diagonal-block-identity", res);
  }
  return report;
}

VerificationReport weakly_r_fits(const FitMatrix& fm, const Tolerances& tol) {
  VerificationReport report;
  if (!check_common(fm, tol, report)) return report;
  for (int i = 0; i < fm.graph.order(); ++i) {
    CMatrix b = fm.block(i, i);
    double smallest = std::numeric_limits<double>::infinity();
    double imag = 0.0;
    for (int k = 0; k < fm.r; ++k) {
      smallest = std::min(smallest, b(k, k).real());
      imag = std::max(imag, std::abs(b(k, k).imag()));
      b(k, k) = 0.0;
    }
    const double off = b.norm();
    if (off > tol.orth_tol) report.add(fm.graph.label(i), "", "diagonal-block-diagonal", off);
    if (imag > tol.orth_tol) report.add(fm.graph.label(i), "", "diagonal-block-real", imag);
    if (!(smallest > tol.orth_tol)) report.add(fm.graph.label(i), "", "diagonal-block-positive", smallest);
  }
  return report;
}

FitMatrix normalize_weak_fit(const FitMatrix& fm, const Tolerances& tol) {
  const auto weak = weakly_r_fits(fm, tol);
  if (!weak.valid) throw PreconditionError("normalize_weak_fit: input does not weakly fit: " + first_violation(weak));
  require_psd(fm, tol, "normalize_weak_fit");
  const long n = fm.matrix.rows();
  Eigen::VectorXd scale(n);
  for (long k = 0; k < n; ++k) scale(k) = 1.0 / std::sqrt(fm.matrix(k, k).real());
  FitMatrix out{fm.graph, fm.r, scale.asDiagonal() * fm.matrix * scale.asDiagonal()};
  const auto report = r_fits(out, tol);
  if (!report.valid) throw VerificationFailure("normalize_weak_fit: output does not fit: " + first_violation(report));
  return out;
}

FitMatrix fosr_to_fit(const SubspaceRepresentation& rep, const Tolerances& tol) {
  const auto input = verify_fosr(rep, tol);
  if (!input.valid) throw PreconditionError("fosr_to_fit: input is not a valid FOSR: " + first_violation(input));
  const int n = rep.graph.order();
  CMatrix x(rep.d, static_cast<long>(n) * rep.r);
  for (int i = 0; i < n; ++i) x.middleCols(static_cast<long>(i) * rep.r, rep.r) = rep.subspaces[i].basis();
  FitMatrix out{rep.graph, rep.r, gram(x)};
  const auto report = r_fits(out, tol);
  if (!report.valid) throw VerificationFailure("fosr_to_fit: output does not fit: " + first_violation(report));
  return out;
}

SubspaceRepresentation fit_to_fosr(const FitMatrix& fm, const Tolerances& tol) {
  const auto input = r_fits(fm, tol);
  if (!input.valid) throw PreconditionError("fit_to_fosr: input does not fit: " + first_violation(input));
  require_psd(fm, tol, "fit_to_fosr");
  const CMatrix factor = psd_factor(fm.matrix, tol);
  const int n = fm.graph.order();
  SubspaceRepresentation out{fm.graph, static_cast<int>(factor.rows()), fm.r, {}, true};
  for (int i = 0; i < n; ++i) {
    out.subspaces.emplace_back(lowdin_orthonormalize(factor.middleCols(static_cast<long>(i) * fm.r, fm.r)));
  }
  const auto report = verify_fosr(out, tol);
  if (!report.valid) throw VerificationFailure("fit_to_fosr: factor is not a valid FOSR: " + first_violation(report));
  return out;
}

FitMatrix direct_sum_fits(const std::vector<FitMatrix>& parts, const Tolerances& tol) {
  if (parts.empty()) throw PreconditionError("direct_sum_fits: no parts");
  std::vector<Graph> graphs;
  std::vector<CMatrix> blocks;
  for (const auto& p : parts) {
    if (p.r != parts.front().r) throw PreconditionError("direct_sum_fits: parts have different r");
    const auto report = r_fits(p, tol);
    if (!report.valid) throw PreconditionError("direct_sum_fits: part does not fit: " + first_violation(report));
    require_psd(p, tol, "direct_sum_fits");
    graphs.push_back(p.graph);
    blocks.push_back(p.matrix);
  }
  return {disjoint_union(graphs), parts.front().r, direct_sum(blocks)};
}

UnionCombine union_combine(const FitMatrix& a1, const FitMatrix& a2, const Graph& g,
                           const std::function<double()>& draw, int max_attempts, const Tolerances& tol) {
  if (a1.r != a2.r) throw PreconditionError("union_combine: parts have different r");
  if (!g.same_labelled_graph(graph_union(a1.graph, a2.graph))) {
    throw PreconditionError("union_combine: target graph is not the union of the parts");
  }
  for (const FitMatrix* a : {&a1, &a2}) {
    const auto report = weakly_r_fits(*a, tol);
    if (!report.valid) throw PreconditionError("union_combine: part does not weakly fit: " + first_violation(report));
    require_psd(*a, tol, "union_combine");
  }
  const int r = a1.r;
  const int n = g.order();
  auto embed = [&](const FitMatrix& a) {
    CMatrix out = CMatrix::Zero(static_cast<long>(n) * r, static_cast<long>(n) * r);
    std::vector<int> pos(a.graph.order());
    for (int i = 0; i < a.graph.order(); ++i) pos[i] = g.index(a.graph.label(i));
    for (int i = 0; i < a.graph.order(); ++i)
      for (int j = 0; j < a.graph.order(); ++j) out.block(pos[i] * r, pos[j] * r, r, r) = a.block(i, j);
    return out;
  };
  const CMatrix hat1 = embed(a1);
  const CMatrix hat2 = embed(a2);
  std::string conflict;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    const double beta = draw();
    FitMatrix out{g, r, hat1 + beta * hat2};
    conflict.clear();
    for (int i = 0; i < n && conflict.empty(); ++i) {
      for (int j = i; j < n; ++j) {
        const bool present = hat1.block(i * r, j * r, r, r).norm() > tol.orth_tol ||
                             hat2.block(i * r, j * r, r, r).norm() > tol.orth_tol;
        if (present && out.block(i, j).norm() <= tol.orth_tol) {
          conflict = g.label(i) + "," + g.label(j);
          break;
        }
      }
    }
    if (!conflict.empty()) continue;
    const auto report = weakly_r_fits(out, tol);
    if (!report.valid) throw VerificationFailure("union_combine: output does not weakly fit: " + first_violation(report));
    return {std::move(out), beta, attempt};
  }
  throw SearchExhausted("union_combine: every beta cancelled block " + conflict + " after " +
                        std::to_string(max_attempts) + " draws");
}

UnionCombine union_combine(const FitMatrix& a1, const FitMatrix& a2, const Graph& g, std::uint64_t seed,
                           int max_attempts, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  return union_combine(a1, a2, g, [&] { return dist(rng); }, max_attempts, tol);
}

}  // namespace orthorank
