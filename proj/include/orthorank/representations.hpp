#pragma once

#include <string>
#include <vector>

#include "orthorank/graph.hpp"
#include "orthorank/graph_algorithms.hpp"
#include "orthorank/linalg.hpp"
#include "orthorank/rational.hpp"

namespace orthorank {

/// (d;r) subspace representation: vertex i of `graph` is assigned
/// `subspaces[i]`, an r-dimensional subspace of C^d.
///
/// `faithful` declares the semantics the certificate claims. false: an
/// orthogonal subspace representation (orthogonal across every edge). true:
/// a faithful one (orthogonal exactly on the non-edges).
struct SubspaceRepresentation {
  Graph graph;
  int d = 0;
  int r = 0;
  std::vector<Subspace> subspaces;
  bool faithful = false;

  [[nodiscard]] const Subspace& at(const std::string& label) const { return subspaces.at(graph.index(label)); }
  [[nodiscard]] Rational value() const { return {d, r}; }
};

/// d/r projective representation: vertex i is assigned the d x d rank-r
/// orthogonal projector `projectors[i]`.
struct ProjectiveRepresentation {
  Graph graph;
  int d = 0;
  int r = 0;
  std::vector<BlockDiagonal> projectors;
  bool faithful = false;

  [[nodiscard]] Rational value() const { return {d, r}; }
};

struct Violation {
  std::string u;  ///< vertex label
  std::string v;  ///< second label for pair conditions, empty otherwise
  std::string condition;
  double residual = 0.0;
};

struct VerificationReport {
  bool valid = true;
  std::vector<Violation> violations;

  void add(std::string u, std::string v, std::string condition, double residual) {
    valid = false;
    violations.push_back({std::move(u), std::move(v), std::move(condition), residual});
  }
};

/// Dimensions, orthonormal bases, and S_u ⊥ S_v on every edge.
[[nodiscard]] VerificationReport verify_osr(const SubspaceRepresentation& rep, const Tolerances& tol = {});
/// Dimensions, orthonormal bases, S_u ⊥ S_v on non-edges and not on edges.
[[nodiscard]] VerificationReport verify_fosr(const SubspaceRepresentation& rep, const Tolerances& tol = {});
/// Dispatches on rep.faithful.
[[nodiscard]] VerificationReport verify(const SubspaceRepresentation& rep, const Tolerances& tol = {});

[[nodiscard]] VerificationReport verify_projective(const ProjectiveRepresentation& rep, const Tolerances& tol = {});
[[nodiscard]] VerificationReport verify_faithful_projective(const ProjectiveRepresentation& rep,
                                                            const Tolerances& tol = {});
[[nodiscard]] VerificationReport verify(const ProjectiveRepresentation& rep, const Tolerances& tol = {});

/// P_u = X_u X_u*. Input must verify under its own flag.
[[nodiscard]] ProjectiveRepresentation osr_to_projective(const SubspaceRepresentation& rep,
                                                         const Tolerances& tol = {});
/// S_u = range(P_u). Input must verify under its own flag.
[[nodiscard]] SubspaceRepresentation projective_to_osr(const ProjectiveRepresentation& rep,
                                                       const Tolerances& tol = {});

/// (d_a + d_b; r_a + r_b) representation with X_u = X_u^a ⊕ X_u^b.
[[nodiscard]] SubspaceRepresentation combine_fold(const SubspaceRepresentation& a,
                                                  const SubspaceRepresentation& b,
                                                  const Tolerances& tol = {});

/// Orthogonal representation of the disjoint union in dimension max d_i,
/// each part zero-padded. Non-faithful inputs only.
[[nodiscard]] SubspaceRepresentation pad_disjoint_union(const std::vector<SubspaceRepresentation>& parts,
                                                        const Tolerances& tol = {});

/// (d1 + d2; r) orthogonal representation of g = G1 ∪ G2 (both induced in g):
/// exclusive vertices are zero-padded, shared vertices stack both bases
/// (scaled by 1/sqrt 2).
[[nodiscard]] SubspaceRepresentation stack_union(const SubspaceRepresentation& rep1,
                                                 const SubspaceRepresentation& rep2, const Graph& g,
                                                 const Tolerances& tol = {});

/// Rotates the whole representation so the i-th listed vertex spans
/// e_{(i-1)r+1} .. e_{ir}. The listed vertices must be pairwise orthogonal in
/// the certificate: a clique of rep.graph for an orthogonal representation,
/// an independent set of rep.graph for a faithful one.
[[nodiscard]] SubspaceRepresentation standardize_clique(const SubspaceRepresentation& rep,
                                                        const std::vector<std::string>& clique,
                                                        const Tolerances& tol = {});

/// Orthogonal representation of G1 ⊕_t G2 in dimension max(d1, d2).
[[nodiscard]] SubspaceRepresentation glue_clique_sum(const SubspaceRepresentation& rep1,
                                                     const SubspaceRepresentation& rep2,
                                                     const std::vector<std::string>& clique,
                                                     const Tolerances& tol = {});

/// (r c; r) orthogonal representation: color class j spans e_{(j-1)r+1} .. e_{jr}.
[[nodiscard]] SubspaceRepresentation coloring_to_osr(const Graph& g, const Coloring& col, int r,
                                                     const Tolerances& tol = {});

/// Faithful (n;1) representation from the Gram factor of I + t·Adj with
/// t = 1 / (2 max(1, lambda_max(Adj))).
[[nodiscard]] SubspaceRepresentation canonical_faithful_rep(const Graph& g, const Tolerances& tol = {});

/// Smallest positive k with k > |d - r b| / (r^2 eps) - 1/r.
[[nodiscard]] int choose_k(int d, int r, int b, double eps);

struct FaithfulFromPair {
  ProjectiveRepresentation rep;
  int k = 0;
  Rational source_value;  ///< d/r of the non-faithful input
  Rational value;         ///< (kd + b)/(kr + 1)
  double gap = 0.0;       ///< |d/r - (kd + b)/(kr + 1)|
};

/// Faithful (kd + b)/(kr + 1) representation of g = rf.graph with
/// Q_u = (P_u ⊕ ... ⊕ P_u) ⊕ R_u, from a d/r representation `p` of the
/// complement and a faithful b/1 representation `rf` of g.
[[nodiscard]] FaithfulFromPair faithful_from_pair(const ProjectiveRepresentation& p,
                                                  const ProjectiveRepresentation& rf, double eps,
                                                  const Tolerances& tol = {});

/// Faithful (2r+1; r) representation of P4 on labels 1..4.
[[nodiscard]] SubspaceRepresentation fixture_p4_fosr(int r);
/// Orthogonal (2r; r) representation of P4 with S1 = S3 and S2 = S4.
[[nodiscard]] SubspaceRepresentation fixture_p4_osr(int r);

/// The representation restricted to the vertices of `h`, checked against h.
/// For orthogonal representations h may be any subgraph of rep.graph; for
/// faithful ones it must be induced.
[[nodiscard]] SubspaceRepresentation restrict_representation(const SubspaceRepresentation& rep,
                                                             const Graph& h);

/// Carries rep over to `target`, matching vertices through `mapping`
/// (mapping[i] is the label in `target` of rep.graph's vertex i). Adjacency
/// must correspond.
[[nodiscard]] SubspaceRepresentation transport(const SubspaceRepresentation& rep, const Graph& target,
                                               const std::vector<std::string>& mapping);

}  // namespace orthorank
