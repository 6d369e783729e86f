#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orthorank/graph.hpp"
#include "orthorank/rational.hpp"

namespace orthorank {

/// c:b-coloring. `colors[i]` holds the b colors of vertex i, each in [1, c],
/// sorted ascending.
struct Coloring {
  int palette = 0;
  int fold = 1;
  std::vector<std::vector<int>> colors;

  /// Every vertex has exactly `fold` distinct colors in range and adjacent
  /// vertices have disjoint color sets.
  [[nodiscard]] bool is_proper_for(const Graph& g) const;
};

// Exact searches below use 64-bit vertex masks and reject graphs with more
// than 64 vertices.

/// A maximum independent set (vertex indices, ascending).
[[nodiscard]] std::vector<int> maximum_independent_set(const Graph& g);
[[nodiscard]] std::vector<int> maximum_clique(const Graph& g);
[[nodiscard]] int alpha(const Graph& g);
/// Computed as alpha(complement(g)).
[[nodiscard]] int omega(const Graph& g);

/// Minimum proper coloring (fold 1, palette = chi).
[[nodiscard]] Coloring optimal_coloring(const Graph& g);
[[nodiscard]] int chi(const Graph& g);

[[nodiscard]] std::optional<Coloring> b_fold_coloring(const Graph& g, int palette, int fold);
/// Least c with a c:b-coloring.
[[nodiscard]] int chi_b(const Graph& g, int fold);

/// All maximal independent sets, each ascending; the list is sorted.
[[nodiscard]] std::vector<std::vector<int>> maximal_independent_sets(const Graph& g);

struct FractionalColoring {
  Rational value;
  /// Weight of each maximal independent set in an optimal fractional coloring.
  std::vector<std::pair<std::vector<int>, Rational>> weights;
};

/// Exact fractional chromatic number from the set-cover LP over maximal
/// independent sets, solved by rational simplex.
[[nodiscard]] FractionalColoring fractional_coloring(const Graph& g);
[[nodiscard]] Rational chi_f(const Graph& g);

struct ChordalityResult {
  bool chordal = false;
  /// Perfect elimination ordering (vertex indices) when chordal.
  std::vector<int> elimination_order;
  /// Vertices of an induced cycle of length >= 4, in cycle order, when not.
  std::vector<int> long_cycle;
};

[[nodiscard]] ChordalityResult is_chordal(const Graph& g);

/// Connected components as sorted index lists, ordered by smallest member.
[[nodiscard]] std::vector<std::vector<int>> connected_components(const Graph& g);
[[nodiscard]] bool is_connected(const Graph& g);

/// G[V(H_i) ∪ {v}] for each component H_i of G - v. Throws PreconditionError
/// unless g is connected with >= 2 vertices and v is a cut-vertex.
[[nodiscard]] std::vector<Graph> cut_vertex_components(const Graph& g, const std::string& v);

}  // namespace orthorank
