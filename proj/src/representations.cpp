#include "orthorank/representations.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace orthorank {
namespace {

// Shape and orthonormality of every assigned basis; returns per-vertex
// usability for the pair checks.
std::vector<char> check_subspace_structure(const SubspaceRepresentation& rep, const Tolerances& tol,
                                           VerificationReport& report) {
  const int n = rep.graph.order();
  std::vector<char> usable(n, 0);
  if (rep.r < 1 || rep.d < rep.r) {
    report.add("", "", "dimensions", static_cast<double>(rep.r - rep.d));
  }
  if (static_cast<int>(rep.subspaces.size()) != n) {
    report.add("", "", "vertex-count", std::abs(static_cast<double>(rep.subspaces.size()) - n));
    return usable;
  }
  for (int i = 0; i < n; ++i) {
    const Subspace& s = rep.subspaces[i];
    if (s.ambient() != rep.d || s.dim() != rep.r) {
      report.add(rep.graph.label(i), "", "dimension",
                 std::abs(s.ambient() - rep.d) + std::abs(s.dim() - rep.r));
      continue;
    }
    if (!s.basis().allFinite()) {
      report.add(rep.graph.label(i), "", "finite", 0.0);
      continue;
    }
    const double res = s.orthonormality_residual();
    if (res > tol.orth_tol) report.add(rep.graph.label(i), "", "orthonormal-basis", res);
    usable[i] = 1;
  }
  return usable;
}

std::vector<char> check_projector_structure(const ProjectiveRepresentation& rep, const Tolerances& tol,
                                            VerificationReport& report) {
  const int n = rep.graph.order();
  std::vector<char> usable(n, 0);
  if (rep.r < 1 || rep.d < rep.r) {
    report.add("", "", "dimensions", static_cast<double>(rep.r - rep.d));
  }
  if (static_cast<int>(rep.projectors.size()) != n) {
    report.add("", "", "vertex-count", std::abs(static_cast<double>(rep.projectors.size()) - n));
    return usable;
  }
  for (int i = 0; i < n; ++i) {
    const BlockDiagonal& p = rep.projectors[i];
    const auto& label = rep.graph.label(i);
    if (p.dim() != rep.d) {
      report.add(label, "", "dimension", std::abs(p.dim() - rep.d));
      continue;
    }
    const double herm = p.hermitian_residual();
    if (herm > tol.orth_tol) report.add(label, "", "hermitian", herm);
    const double idem = p.idempotent_residual();
    if (idem > tol.orth_tol) report.add(label, "", "idempotent", idem);
    const int rk = p.rank(tol);
    if (rk != rep.r) report.add(label, "", "rank", std::abs(rk - rep.r));
    usable[i] = 1;
  }
  return usable;
}

template <typename Overlap>
void check_pairs(const Graph& g, const std::vector<char>& usable, bool faithful, double threshold,
                 Overlap overlap, const char* zero_on_edge, const char* zero_on_non_edge,
                 const char* nonzero_on_edge, VerificationReport& report) {
  const int n = g.order();
  for (int i = 0; i < n; ++i) {
    if (!usable[i]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (!usable[j]) continue;
      const bool edge = g.adjacent(i, j);
      if (!faithful && !edge) continue;
      const double ov = overlap(i, j);
      if (!faithful) {
        if (ov > threshold) report.add(g.label(i), g.label(j), zero_on_edge, ov);
      } else if (edge) {
        if (ov <= threshold) report.add(g.label(i), g.label(j), nonzero_on_edge, ov);
      } else if (ov > threshold) {
        report.add(g.label(i), g.label(j), zero_on_non_edge, ov);
      }
    }
  }
}

VerificationReport verify_subspaces(const SubspaceRepresentation& rep, bool faithful, const Tolerances& tol) {
  VerificationReport report;
  const auto usable = check_subspace_structure(rep, tol, report);
  check_pairs(
      rep.graph, usable, faithful, orthogonality_threshold(rep.r, rep.r, tol),
      [&](int i, int j) { return overlap_norm(rep.subspaces[i], rep.subspaces[j]); },
      "edge-orthogonality", "non-edge-orthogonality", "edge-non-orthogonality", report);
  return report;
}

VerificationReport verify_projectors(const ProjectiveRepresentation& rep, bool faithful, const Tolerances& tol) {
  VerificationReport report;
  const auto usable = check_projector_structure(rep, tol, report);
  check_pairs(
      rep.graph, usable, faithful, orthogonality_threshold(rep.r, rep.r, tol),
      [&](int i, int j) { return product_norm(rep.projectors[i], rep.projectors[j]); },
      "edge-product-zero", "non-edge-product-zero", "edge-product-nonzero", report);
  return report;
}

std::string summarize(const VerificationReport& report) {
  if (report.violations.empty()) return "valid";
  const auto& v = report.violations.front();
  std::string where = v.u;
  if (!v.v.empty()) where += "," + v.v;
  return v.condition + (where.empty() ? "" : " at " + where) + " (residual " + std::to_string(v.residual) +
         ")" + (report.violations.size() > 1 ? " and " + std::to_string(report.violations.size() - 1) + " more" : "");
}

void require_valid(const SubspaceRepresentation& rep, const Tolerances& tol, const std::string& who) {
  const auto report = verify(rep, tol);
  if (!report.valid) throw PreconditionError(who + ": input certificate is invalid: " + summarize(report));
}

void require_valid(const ProjectiveRepresentation& rep, const Tolerances& tol, const std::string& who) {
  const auto report = verify(rep, tol);
  if (!report.valid) throw PreconditionError(who + ": input certificate is invalid: " + summarize(report));
}

template <typename Rep>
Rep checked_output(Rep rep, const Tolerances& tol, const std::string& who) {
  const auto report = verify(rep, tol);
  if (!report.valid) throw VerificationFailure(who + ": constructed certificate fails verification: " + summarize(report));
  return rep;
}

using boost::multiprecision::cpp_rational;

// eps as the shortest decimal that round-trips to the given double, so that
// 0.1 means 1/10 rather than the nearest binary fraction.
cpp_rational decimal_value(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  const std::string text(buf, res.ptr);
  const auto e_pos = text.find('e');
  std::string mantissa = text.substr(0, e_pos);
  int exponent = std::stoi(text.substr(e_pos + 1));
  if (const auto dot = mantissa.find('.'); dot != std::string::npos) {
    exponent -= static_cast<int>(mantissa.size() - dot - 1);
    mantissa.erase(dot, 1);
  }
  cpp_rational value{boost::multiprecision::cpp_int(mantissa)};
  const cpp_rational ten(10);
  for (; exponent > 0; --exponent) value *= ten;
  for (; exponent < 0; ++exponent) value /= ten;
  return value;
}

// |d/r - (kd + b)/(kr + 1)| = |d - rb| / (r (kr + 1)) < eps
bool gap_below(long long d, long long r, long long b, long long k, const cpp_rational& eps) {
  const long long diff = d > r * b ? d - r * b : r * b - d;
  return cpp_rational(diff) < eps * r * (k * r + 1);
}

CMatrix pad_rows(const CMatrix& x, int rows, int offset = 0) {
  CMatrix out = CMatrix::Zero(rows, x.cols());
  out.block(offset, 0, x.rows(), x.cols()) = x;
  return out;
}

}  // namespace

VerificationReport verify_osr(const SubspaceRepresentation& rep, const Tolerances& tol) {
  return verify_subspaces(rep, false, tol);
}

VerificationReport verify_fosr(const SubspaceRepresentation& rep, const Tolerances& tol) {
  return verify_subspaces(rep, true, tol);
}

VerificationReport verify(const SubspaceRepresentation& rep, const Tolerances& tol) {
  return verify_subspaces(rep, rep.faithful, tol);
}

VerificationReport verify_projective(const ProjectiveRepresentation& rep, const Tolerances& tol) {
  return verify_projectors(rep, false, tol);
}

VerificationReport verify_faithful_projective(const ProjectiveRepresentation& rep, const Tolerances& tol) {
  return verify_projectors(rep, true, tol);
}

VerificationReport verify(const ProjectiveRepresentation& rep, const Tolerances& tol) {
  return verify_projectors(rep, rep.faithful, tol);
}

ProjectiveRepresentation osr_to_projective(const SubspaceRepresentation& rep, const Tolerances& tol) {
  require_valid(rep, tol, "osr_to_projective");
  ProjectiveRepresentation out{rep.graph, rep.d, rep.r, {}, rep.faithful};
  for (const auto& s : rep.subspaces) out.projectors.emplace_back(projector_from_basis(s));
  return checked_output(std::move(out), tol, "osr_to_projective");
}

SubspaceRepresentation projective_to_osr(const ProjectiveRepresentation& rep, const Tolerances& tol) {
  require_valid(rep, tol, "projective_to_osr");
  SubspaceRepresentation out{rep.graph, rep.d, rep.r, {}, rep.faithful};
  for (const auto& p : rep.projectors) {
    if (p.blocks().size() == 1) {
      out.subspaces.push_back(basis_from_projector(p.blocks().front(), tol));
      continue;
    }
    std::vector<CMatrix> pieces;
    for (const auto& b : p.blocks()) {
      if (rank(b, tol) == 0) {
        pieces.emplace_back(b.rows(), 0);
      } else {
        pieces.push_back(basis_from_projector(b, tol).basis());
      }
    }
    out.subspaces.emplace_back(direct_sum(pieces));
  }
  return checked_output(std::move(out), tol, "projective_to_osr");
}

SubspaceRepresentation combine_fold(const SubspaceRepresentation& a, const SubspaceRepresentation& b,
                                    const Tolerances& tol) {
  if (!(a.graph == b.graph)) throw PreconditionError("combine_fold: representations are for different graphs");
  if (a.faithful != b.faithful) throw PreconditionError("combine_fold: faithful flags differ");
  require_valid(a, tol, "combine_fold");
  require_valid(b, tol, "combine_fold");
  SubspaceRepresentation out{a.graph, a.d + b.d, a.r + b.r, {}, a.faithful};
  for (std::size_t i = 0; i < a.subspaces.size(); ++i) {
    out.subspaces.emplace_back(direct_sum({a.subspaces[i].basis(), b.subspaces[i].basis()}));
  }
  return checked_output(std::move(out), tol, "combine_fold");
}

SubspaceRepresentation pad_disjoint_union(const std::vector<SubspaceRepresentation>& parts, const Tolerances& tol) {
  if (parts.empty()) throw PreconditionError("pad_disjoint_union: no parts");
  const int r = parts.front().r;
  int d = 0;
  std::vector<Graph> graphs;
  for (const auto& p : parts) {
    if (p.faithful) {
      throw PreconditionError(
          "pad_disjoint_union: faithful inputs are not supported (padding makes cross-part pairs orthogonal "
          "without checking faithfulness; use direct_sum_fits)");
    }
    if (p.r != r) throw PreconditionError("pad_disjoint_union: parts have different r");
    require_valid(p, tol, "pad_disjoint_union");
    d = std::max(d, p.d);
    graphs.push_back(p.graph);
  }
  SubspaceRepresentation out{disjoint_union(graphs), d, r, {}, false};
  for (const auto& p : parts)
    for (const auto& s : p.subspaces) out.subspaces.emplace_back(pad_rows(s.basis(), d));
  return checked_output(std::move(out), tol, "pad_disjoint_union");
}

SubspaceRepresentation stack_union(const SubspaceRepresentation& rep1, const SubspaceRepresentation& rep2,
                                   const Graph& g, const Tolerances& tol) {
  if (rep1.faithful || rep2.faithful) throw PreconditionError("stack_union: faithful inputs are not supported");
  if (rep1.r != rep2.r) throw PreconditionError("stack_union: parts have different r");
  if (!is_induced_subgraph_of(rep1.graph, g) || !is_induced_subgraph_of(rep2.graph, g)) {
    throw PreconditionError("stack_union: parts must be induced subgraphs of the target graph");
  }
  if (!g.same_labelled_graph(graph_union(rep1.graph, rep2.graph))) {
    throw PreconditionError("stack_union: target graph is not the union of the parts");
  }
  require_valid(rep1, tol, "stack_union");
  require_valid(rep2, tol, "stack_union");
  const int d = rep1.d + rep2.d;
  SubspaceRepresentation out{g, d, rep1.r, {}, false};
  for (const auto& label : g.labels()) {
    const bool in1 = rep1.graph.has_vertex(label);
    const bool in2 = rep2.graph.has_vertex(label);
    CMatrix x = CMatrix::Zero(d, rep1.r);
    if (in1) x.topRows(rep1.d) = rep1.at(label).basis();
    if (in2) x.bottomRows(rep2.d) = rep2.at(label).basis();
    // Both halves are orthonormal, so the stacked columns have norm sqrt 2.
    if (in1 && in2) x /= std::sqrt(2.0);
    out.subspaces.emplace_back(std::move(x));
  }
  return checked_output(std::move(out), tol, "stack_union");
}

SubspaceRepresentation standardize_clique(const SubspaceRepresentation& rep, const std::vector<std::string>& clique,
                                          const Tolerances& tol) {
  const int t = static_cast<int>(clique.size());
  std::set<std::string> distinct(clique.begin(), clique.end());
  if (static_cast<int>(distinct.size()) != t) throw PreconditionError("standardize_clique: repeated vertex");
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      const bool adj = rep.graph.adjacent(clique[i], clique[j]);
      if (adj == rep.faithful) {
        throw PreconditionError("standardize_clique: " + clique[i] + "," + clique[j] +
                                (rep.faithful ? " are adjacent (faithful certificates are standardized on "
                                                "independent sets)"
                                              : " are not adjacent"));
      }
    }
  }
  if (rep.d < rep.r * t) throw PreconditionError("standardize_clique: d < r t");
  require_valid(rep, tol, "standardize_clique");
  CMatrix m(rep.d, rep.r * t);
  for (int i = 0; i < t; ++i) m.middleCols(i * rep.r, rep.r) = rep.at(clique[i]).basis();
  // The blocks are orthogonal only up to orth_tol; snap M to the nearest
  // orthonormal matrix before completing it to a unitary.
  const CMatrix u = align_to_standard(lowdin_orthonormalize(m), tol);
  SubspaceRepresentation out{rep.graph, rep.d, rep.r, {}, rep.faithful};
  for (const auto& s : rep.subspaces) out.subspaces.emplace_back(u * s.basis());
  return checked_output(std::move(out), tol, "standardize_clique");
}

SubspaceRepresentation glue_clique_sum(const SubspaceRepresentation& rep1, const SubspaceRepresentation& rep2,
                                       const std::vector<std::string>& clique, const Tolerances& tol) {
  if (rep1.faithful || rep2.faithful) throw PreconditionError("glue_clique_sum: faithful inputs are not supported");
  if (rep1.r != rep2.r) throw PreconditionError("glue_clique_sum: parts have different r");
  const int t = static_cast<int>(clique.size());
  const CliqueSum cs = clique_sum(rep1.graph, rep2.graph, t);
  if (std::set<std::string>(clique.begin(), clique.end()) != std::set<std::string>(cs.clique.begin(), cs.clique.end())) {
    throw PreconditionError("glue_clique_sum: the given clique is not the intersection of the parts");
  }
  const auto s1 = standardize_clique(rep1, clique, tol);
  const auto s2 = standardize_clique(rep2, clique, tol);
  const int r = rep1.r;
  const int d = std::max(rep1.d, rep2.d);
  SubspaceRepresentation out{cs.graph, d, r, {}, false};
  for (const auto& label : cs.graph.labels()) {
    const auto pos = std::find(clique.begin(), clique.end(), label);
    if (pos != clique.end()) {
      out.subspaces.emplace_back(standard_columns(d, static_cast<int>(pos - clique.begin()) * r, r));
    } else if (s1.graph.has_vertex(label)) {
      out.subspaces.emplace_back(pad_rows(s1.at(label).basis(), d));
    } else {
      out.subspaces.emplace_back(pad_rows(s2.at(label).basis(), d));
    }
  }
  return checked_output(std::move(out), tol, "glue_clique_sum");
}

SubspaceRepresentation coloring_to_osr(const Graph& g, const Coloring& col, int r, const Tolerances& tol) {
  if (r < 1) throw PreconditionError("coloring_to_osr: r must be positive");
  if (col.fold != 1 || !col.is_proper_for(g)) throw PreconditionError("coloring_to_osr: coloring is not proper");
  const int d = r * std::max(1, col.palette);
  SubspaceRepresentation out{g, d, r, {}, false};
  for (int i = 0; i < g.order(); ++i) {
    out.subspaces.emplace_back(standard_columns(d, (col.colors[i].front() - 1) * r, r));
  }
  return checked_output(std::move(out), tol, "coloring_to_osr");
}

SubspaceRepresentation canonical_faithful_rep(const Graph& g, const Tolerances& tol) {
  const int n = g.order();
  if (n == 0) throw PreconditionError("canonical_faithful_rep: graph has no vertices");
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (auto [a, b] : g.edges()) adj(a, b) = adj(b, a) = 1.0;
  const double lambda_max = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(adj, Eigen::EigenvaluesOnly)
                                .eigenvalues()
                                .maxCoeff();
  const double t = 1.0 / (2.0 * std::max(1.0, lambda_max));
  const CMatrix a = (Eigen::MatrixXd::Identity(n, n) + t * adj).cast<Complex>();
  // a is positive definite, so a = L L* and X = L* has unit columns with X* X = a.
  Eigen::LLT<CMatrix> llt(a);
  if (llt.info() != Eigen::Success) throw VerificationFailure("canonical_faithful_rep: factorization failed");
  const CMatrix x = llt.matrixU();
  SubspaceRepresentation out{g, n, 1, {}, true};
  for (int i = 0; i < n; ++i) out.subspaces.emplace_back(x.col(i) / x.col(i).norm());
  return checked_output(std::move(out), tol, "canonical_faithful_rep");
}

int choose_k(int d, int r, int b, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw PreconditionError("choose_k: eps must be positive");
  if (r < 1 || b < 1 || d < r) throw PreconditionError("choose_k: need r <= d and b >= 1");
  const cpp_rational e = decimal_value(eps);
  const double bound = std::abs(static_cast<double>(d) - static_cast<double>(r) * b) /
                           (static_cast<double>(r) * r * eps) -
                       1.0 / r;
  if (!(bound < 2e9)) throw PreconditionError("choose_k: eps too small, k would overflow");
  // The double estimate can sit on the wrong side of an integral bound; settle
  // it with the exact test.
  long long k = bound < 1.0 ? 1 : static_cast<long long>(std::floor(bound)) + 1;
  while (k > 1 && gap_below(d, r, b, k - 1, e)) --k;
  while (!gap_below(d, r, b, k, e)) ++k;
  return static_cast<int>(k);
}

FaithfulFromPair faithful_from_pair(const ProjectiveRepresentation& p, const ProjectiveRepresentation& rf, double eps,
                                    const Tolerances& tol) {
  if (p.faithful) throw PreconditionError("faithful_from_pair: the first input must be a non-faithful representation");
  if (!rf.faithful || rf.r != 1) throw PreconditionError("faithful_from_pair: the second input must be faithful b/1");
  if (!p.graph.same_labelled_graph(complement(rf.graph))) {
    throw PreconditionError("faithful_from_pair: the first input is not for the complement of the second's graph");
  }
  require_valid(p, tol, "faithful_from_pair");
  require_valid(rf, tol, "faithful_from_pair");
  const int k = choose_k(p.d, p.r, rf.d, eps);
  FaithfulFromPair result;
  result.k = k;
  result.source_value = p.value();
  result.rep = ProjectiveRepresentation{rf.graph, k * p.d + rf.d, k * p.r + 1, {}, true};
  for (int i = 0; i < rf.graph.order(); ++i) {
    const auto& pu = p.projectors[p.graph.index(rf.graph.label(i))];
    result.rep.projectors.push_back(BlockDiagonal::repeat_then(pu, k, rf.projectors[i]));
  }
  result.rep = checked_output(std::move(result.rep), tol, "faithful_from_pair");
  result.value = result.rep.value();
  const Rational diff = result.source_value - result.value;
  result.gap = std::abs(diff.to_double());
  if (!gap_below(p.d, p.r, rf.d, k, decimal_value(eps))) {
    throw VerificationFailure("faithful_from_pair: value gap " + std::to_string(result.gap) + " is not below eps");
  }
  return result;
}

SubspaceRepresentation fixture_p4_fosr(int r) {
  if (r < 1) throw PreconditionError("fixture_p4_fosr: r must be positive");
  const Graph p4 = generate(GraphKind::Path, 4);
  const int d = 2 * r + 1;
  SubspaceRepresentation out{p4, d, r, {}, true};
  if (r == 1) {
    // The index pattern below collapses at r = 1 (S1 ⊥ S2 on an edge); use
    // e1, (e1+e2)/√2, (e2+e3)/√2, e3 instead.
    const double h = 1.0 / std::sqrt(2.0);
    CMatrix v = CMatrix::Zero(3, 4);
    v(0, 0) = 1.0;
    v(0, 1) = v(1, 1) = h;
    v(1, 2) = v(2, 2) = h;
    v(2, 3) = 1.0;
    for (int i = 0; i < 4; ++i) out.subspaces.emplace_back(v.col(i));
    return out;
  }
  out.subspaces.emplace_back(standard_columns(d, 0, r));
  out.subspaces.emplace_back(standard_columns(d, 1, r));
  out.subspaces.emplace_back(standard_columns(d, r, r));
  out.subspaces.emplace_back(standard_columns(d, r + 1, r));
  return out;
}

SubspaceRepresentation fixture_p4_osr(int r) {
  if (r < 1) throw PreconditionError("fixture_p4_osr: r must be positive");
  const int d = 2 * r;
  SubspaceRepresentation out{generate(GraphKind::Path, 4), d, r, {}, false};
  for (int i = 0; i < 4; ++i) out.subspaces.emplace_back(standard_columns(d, (i % 2) * r, r));
  return out;
}

SubspaceRepresentation restrict_representation(const SubspaceRepresentation& rep, const Graph& h) {
  const bool ok = rep.faithful ? is_induced_subgraph_of(h, rep.graph) : is_subgraph_of(h, rep.graph);
  if (!ok) {
    throw PreconditionError(rep.faithful ? "restrict_representation: faithful certificates restrict to induced subgraphs only"
                                         : "restrict_representation: not a subgraph");
  }
  SubspaceRepresentation out{h, rep.d, rep.r, {}, rep.faithful};
  for (const auto& label : h.labels()) out.subspaces.push_back(rep.at(label));
  return out;
}

SubspaceRepresentation transport(const SubspaceRepresentation& rep, const Graph& target,
                                 const std::vector<std::string>& mapping) {
  const int n = rep.graph.order();
  if (target.order() != n || static_cast<int>(mapping.size()) != n) {
    throw PreconditionError("transport: vertex counts differ");
  }
  std::vector<int> image(n);
  std::set<int> seen;
  for (int i = 0; i < n; ++i) {
    image[i] = target.index(mapping[i]);
    if (!seen.insert(image[i]).second) throw PreconditionError("transport: mapping is not injective");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rep.graph.adjacent(i, j) != target.adjacent(image[i], image[j])) {
        throw PreconditionError("transport: mapping is not an isomorphism");
      }
  SubspaceRepresentation out{target, rep.d, rep.r, std::vector<Subspace>(n), rep.faithful};
  for (int i = 0; i < n; ++i) out.subspaces[image[i]] = rep.subspaces[i];
  return out;
}

}  // namespace orthorank
