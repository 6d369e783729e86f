#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orthorank/errors.hpp"

namespace orthorank {

using VertexPair = std::pair<std::string, std::string>;

/// Simple undirected graph with string-labelled vertices.
///
/// Vertex order is the declaration order and defines the internal 0-based
/// index of every vertex; every block/row layout downstream follows it.
/// Values are immutable once constructed.
class Graph {
 public:
  Graph() = default;
  /// Throws PreconditionError on duplicate labels, loops or unknown endpoints.
  /// Repeated edges collapse to one.
  Graph(std::vector<std::string> vertices, const std::vector<VertexPair>& edges);
  /// Index-based constructor; labels must already be distinct.
  Graph(std::vector<std::string> vertices, const std::vector<std::pair<int, int>>& edges);

  [[nodiscard]] int order() const { return static_cast<int>(labels_.size()); }
  [[nodiscard]] int size() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(int i) const { return labels_.at(i); }
  [[nodiscard]] bool has_vertex(std::string_view label) const;
  /// Throws PreconditionError for an unknown label.
  [[nodiscard]] int index(std::string_view label) const;
  [[nodiscard]] bool adjacent(int i, int j) const {
    return adj_[static_cast<std::size_t>(i) * labels_.size() + j] != 0;
  }
  [[nodiscard]] bool adjacent(std::string_view a, std::string_view b) const {
    return adjacent(index(a), index(b));
  }
  [[nodiscard]] const std::vector<int>& neighbors(int i) const { return nbrs_.at(i); }
  [[nodiscard]] int degree(int i) const { return static_cast<int>(nbrs_.at(i).size()); }
  /// Edges as index pairs (i < j), sorted lexicographically.
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  [[nodiscard]] std::vector<VertexPair> labelled_edges() const;

  /// Same labels in the same order and the same edge set.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.edges_ == b.edges_;
  }
  /// Same vertex labels (any order) and same labelled edges.
  [[nodiscard]] bool same_labelled_graph(const Graph& other) const;
  /// Adjacency equal index by index, ignoring labels.
  [[nodiscard]] bool same_structure(const Graph& other) const;
  /// Label-aware key: sorted labels and sorted labelled edges.
  [[nodiscard]] std::string canonical_key() const;

 private:
  void build(const std::vector<std::pair<int, int>>& edges);

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> lookup_;
  std::vector<unsigned char> adj_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<std::pair<int, int>> edges_;
};

enum class GraphFormat { EdgeListJson, Graph6 };
enum class GraphKind { Path, Cycle, Complete, Empty };

[[nodiscard]] Graph parse_graph(std::string_view text, GraphFormat format);
[[nodiscard]] std::string to_graph6(const Graph& g);
[[nodiscard]] std::string to_edge_list_json(const Graph& g);

/// Standard graphs on labels "1".."n".
[[nodiscard]] Graph generate(GraphKind kind, int n);
/// Complete bipartite K_{a,b}, labels "1".."a+b" with the first a on one side.
[[nodiscard]] Graph complete_bipartite(int a, int b);

[[nodiscard]] Graph complement(const Graph& g);
/// Vertices keep g's relative order.
[[nodiscard]] Graph induced_subgraph(const Graph& g, const std::vector<std::string>& w);
/// Labels are kept when the parts are label-disjoint; otherwise every label
/// becomes "<part index>:<label>".
[[nodiscard]] Graph disjoint_union(const std::vector<Graph>& parts);
/// Shared labels are shared vertices. Order: g1's vertices, then g2's new ones.
[[nodiscard]] Graph graph_union(const Graph& g1, const Graph& g2);
/// True if `h` has every vertex of itself in `g` and h's edges are exactly g's
/// edges among those vertices.
[[nodiscard]] bool is_induced_subgraph_of(const Graph& h, const Graph& g);
/// True if every vertex and edge of `h` is in `g`.
[[nodiscard]] bool is_subgraph_of(const Graph& h, const Graph& g);

struct CliqueSum {
  Graph graph;
  std::vector<std::string> clique;  ///< shared vertices, in g1's order
};

/// g1 ⊕_t g2. Throws PreconditionError if the shared vertex set is not a
/// t-clique of both parts.
[[nodiscard]] CliqueSum clique_sum(const Graph& g1, const Graph& g2, int t);

/// Relabels vertex i of g to labels[i].
[[nodiscard]] Graph relabel(const Graph& g, const std::vector<std::string>& labels);

}  // namespace orthorank
