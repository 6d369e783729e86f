#include "orthorank/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace orthorank {

Graph::Graph(std::vector<std::string> vertices, const std::vector<VertexPair>& edges)
    : labels_(std::move(vertices)) {
  for (int i = 0; i < order(); ++i) {
    if (!lookup_.emplace(labels_[i], i).second) {
      throw PreconditionError("duplicate vertex label '" + labels_[i] + "'");
    }
  }
  std::vector<std::pair<int, int>> idx;
  idx.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    if (a == b) throw PreconditionError("loop edge at vertex '" + a + "'");
    idx.emplace_back(index(a), index(b));
  }
  build(idx);
}

Graph::Graph(std::vector<std::string> vertices, const std::vector<std::pair<int, int>>& edges)
    : labels_(std::move(vertices)) {
  for (int i = 0; i < order(); ++i) {
    if (!lookup_.emplace(labels_[i], i).second) {
      throw PreconditionError("duplicate vertex label '" + labels_[i] + "'");
    }
  }
  for (const auto& [a, b] : edges) {
    if (a < 0 || b < 0 || a >= order() || b >= order()) {
      throw PreconditionError("edge endpoint out of range");
    }
    if (a == b) throw PreconditionError("loop edge at vertex '" + labels_[a] + "'");
  }
  build(edges);
}

void Graph::build(const std::vector<std::pair<int, int>>& edges) {
  const auto n = labels_.size();
  adj_.assign(n * n, 0);
  nbrs_.assign(n, {});
  for (auto [a, b] : edges) {
    if (a > b) std::swap(a, b);
    if (adj_[a * n + b]) continue;
    adj_[a * n + b] = adj_[b * n + a] = 1;
    edges_.emplace_back(a, b);
  }
  std::sort(edges_.begin(), edges_.end());
  for (auto [a, b] : edges_) {
    nbrs_[a].push_back(b);
    nbrs_[b].push_back(a);
  }
  for (auto& list : nbrs_) std::sort(list.begin(), list.end());
}

bool Graph::has_vertex(std::string_view label) const {
  return lookup_.find(std::string(label)) != lookup_.end();
}

int Graph::index(std::string_view label) const {
  auto it = lookup_.find(std::string(label));
  if (it == lookup_.end()) throw PreconditionError("unknown vertex '" + std::string(label) + "'");
  return it->second;
}

std::vector<VertexPair> Graph::labelled_edges() const {
  std::vector<VertexPair> out;
  out.reserve(edges_.size());
  for (auto [a, b] : edges_) out.emplace_back(labels_[a], labels_[b]);
  return out;
}

bool Graph::same_labelled_graph(const Graph& other) const {
  if (order() != other.order() || size() != other.size()) return false;
  for (const auto& l : labels_) {
    if (!other.has_vertex(l)) return false;
  }
  for (auto [a, b] : edges_) {
    if (!other.adjacent(labels_[a], labels_[b])) return false;
  }
  return true;
}

bool Graph::same_structure(const Graph& other) const {
  return order() == other.order() && edges_ == other.edges_;
}

std::string Graph::canonical_key() const {
  std::vector<std::string> sorted = labels_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<VertexPair> es;
  for (auto [a, b] : edges_) {
    auto x = labels_[a];
    auto y = labels_[b];
    if (y < x) std::swap(x, y);
    es.emplace_back(std::move(x), std::move(y));
  }
  std::sort(es.begin(), es.end());
  std::ostringstream os;
  for (const auto& l : sorted) os << l.size() << ':' << l << ';';
  os << '|';
  for (const auto& [x, y] : es) os << x.size() << ':' << x << ',' << y.size() << ':' << y << ';';
  return os.str();
}

namespace {

Graph parse_edge_list_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), static_cast<long>(e.byte));
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array()) {
    throw ParseError("edge-list JSON needs a \"vertices\" array", -1);
  }
  std::vector<std::string> vertices;
  std::set<std::string> seen;
  const auto& vs = doc["vertices"];
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].is_string()) throw ParseError("vertex label must be a string", static_cast<long>(i));
    auto label = vs[i].get<std::string>();
    if (!seen.insert(label).second) {
      throw ParseError("duplicate vertex label '" + label + "'", static_cast<long>(i));
    }
    vertices.push_back(std::move(label));
  }
  std::vector<VertexPair> edges;
  if (doc.contains("edges")) {
    const auto& es = doc["edges"];
    if (!es.is_array()) throw ParseError("\"edges\" must be an array", -1);
    for (std::size_t i = 0; i < es.size(); ++i) {
      const auto& e = es[i];
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
        throw ParseError("edge must be a pair of labels", static_cast<long>(i));
      }
      auto a = e[0].get<std::string>();
      auto b = e[1].get<std::string>();
      if (a == b) throw ParseError("loop edge at vertex '" + a + "'", static_cast<long>(i));
      if (!seen.count(a) || !seen.count(b)) {
        throw ParseError("edge endpoint is not a declared vertex", static_cast<long>(i));
      }
      edges.emplace_back(std::move(a), std::move(b));
    }
  }
  return {std::move(vertices), edges};
}

Graph parse_graph6(std::string_view text) {
  std::size_t pos = 0;
  constexpr std::string_view header = ">>graph6<<";
  if (text.substr(0, header.size()) == header) pos = header.size();
  // Trailing newline is part of the usual file encoding.
  std::size_t end = text.size();
  while (end > pos && (text[end - 1] == '\n' || text[end - 1] == '\r')) --end;

  auto byte_at = [&](std::size_t p) -> int {
    if (p >= end) throw ParseError("graph6: truncated input", static_cast<long>(p));
    const int c = static_cast<unsigned char>(text[p]);
    if (c < 63 || c > 126) throw ParseError("graph6: byte out of range", static_cast<long>(p));
    return c - 63;
  };

  long long n = 0;
  if (pos < end && text[pos] == '~') {
    if (pos + 1 < end && text[pos + 1] == '~') {
      pos += 2;
      for (int i = 0; i < 6; ++i) n = (n << 6) | byte_at(pos++);
    } else {
      pos += 1;
      for (int i = 0; i < 3; ++i) n = (n << 6) | byte_at(pos++);
    }
  } else {
    n = byte_at(pos++);
  }
  if (n > 100000) throw ParseError("graph6: graph too large", 0);

  const long long bits = n * (n - 1) / 2;
  const long long bytes = (bits + 5) / 6;
  if (static_cast<long long>(end - pos) != bytes) {
    throw ParseError("graph6: expected " + std::to_string(bytes) + " data bytes, found " +
                         std::to_string(end - pos),
                     static_cast<long>(pos));
  }
  std::vector<std::string> labels;
  for (long long i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  long long k = 0;
  for (long long j = 1; j < n; ++j) {
    for (long long i = 0; i < j; ++i, ++k) {
      const int v = byte_at(pos + static_cast<std::size_t>(k / 6));
      if ((v >> (5 - k % 6)) & 1) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return {std::move(labels), edges};
}

}  // namespace

Graph parse_graph(std::string_view text, GraphFormat format) {
  return format == GraphFormat::Graph6 ? parse_graph6(text) : parse_edge_list_json(text);
}

std::string to_graph6(const Graph& g) {
  std::string out;
  const long long n = g.order();
  if (n < 63) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out += "~~";
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

std::string to_edge_list_json(const Graph& g) {
  nlohmann::json doc;
  doc["vertices"] = g.labels();
  doc["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : g.labelled_edges()) doc["edges"].push_back({a, b});
  return doc.dump();
}

Graph generate(GraphKind kind, int n) {
  if (n < 1) throw PreconditionError("generate: n must be at least 1");
  if (kind == GraphKind::Cycle && n < 3) throw PreconditionError("generate: cycle needs n >= 3");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  switch (kind) {
    case GraphKind::Path:
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case GraphKind::Cycle:
      for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
      break;
    case GraphKind::Complete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      break;
    case GraphKind::Empty:
      break;
  }
  return {std::move(labels), edges};
}

Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw PreconditionError("complete_bipartite: sides must be nonempty");
  std::vector<std::string> labels;
  for (int i = 1; i <= a + b; ++i) labels.push_back(std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < a; ++i)
    for (int j = a; j < a + b; ++j) edges.emplace_back(i, j);
  return {std::move(labels), edges};
}

Graph complement(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < g.order(); ++i)
    for (int j = i + 1; j < g.order(); ++j)
      if (!g.adjacent(i, j)) edges.emplace_back(i, j);
  return {g.labels(), edges};
}

Graph induced_subgraph(const Graph& g, const std::vector<std::string>& w) {
  std::vector<char> keep(g.order(), 0);
  for (const auto& l : w) keep[g.index(l)] = 1;
  std::vector<int> old_to_new(g.order(), -1);
  std::vector<std::string> labels;
  for (int i = 0; i < g.order(); ++i) {
    if (keep[i]) {
      old_to_new[i] = static_cast<int>(labels.size());
      labels.push_back(g.label(i));
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : g.edges())
    if (keep[a] && keep[b]) edges.emplace_back(old_to_new[a], old_to_new[b]);
  return {std::move(labels), edges};
}

Graph disjoint_union(const std::vector<Graph>& parts) {
  std::set<std::string> seen;
  bool collide = false;
  for (const auto& p : parts)
    for (const auto& l : p.labels())
      if (!seen.insert(l).second) collide = true;
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> edges;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const int offset = static_cast<int>(labels.size());
    for (const auto& l : parts[k].labels()) {
      labels.push_back(collide ? std::to_string(k) + ":" + l : l);
    }
    for (auto [a, b] : parts[k].edges()) edges.emplace_back(a + offset, b + offset);
  }
  return {std::move(labels), edges};
}

Graph graph_union(const Graph& g1, const Graph& g2) {
  std::vector<std::string> labels = g1.labels();
  for (const auto& l : g2.labels())
    if (!g1.has_vertex(l)) labels.push_back(l);
  std::vector<VertexPair> edges = g1.labelled_edges();
  for (auto& e : g2.labelled_edges()) edges.push_back(std::move(e));
  return {std::move(labels), edges};
}

bool is_subgraph_of(const Graph& h, const Graph& g) {
  for (const auto& l : h.labels())
    if (!g.has_vertex(l)) return false;
  for (const auto& [a, b] : h.labelled_edges())
    if (!g.adjacent(a, b)) return false;
  return true;
}

bool is_induced_subgraph_of(const Graph& h, const Graph& g) {
  if (!is_subgraph_of(h, g)) return false;
  for (int i = 0; i < h.order(); ++i)
    for (int j = i + 1; j < h.order(); ++j)
      if (g.adjacent(h.label(i), h.label(j)) != h.adjacent(i, j)) return false;
  return true;
}

CliqueSum clique_sum(const Graph& g1, const Graph& g2, int t) {
  std::vector<std::string> shared;
  for (const auto& l : g1.labels())
    if (g2.has_vertex(l)) shared.push_back(l);
  if (static_cast<int>(shared.size()) != t) {
    throw PreconditionError("clique_sum: parts share " + std::to_string(shared.size()) +
                            " vertices, expected t = " + std::to_string(t));
  }
  for (std::size_t i = 0; i < shared.size(); ++i) {
    for (std::size_t j = i + 1; j < shared.size(); ++j) {
      if (!g1.adjacent(shared[i], shared[j])) {
        throw PreconditionError("clique_sum: shared pair " + shared[i] + "," + shared[j] +
                                " is not adjacent in the first part");
      }
      if (!g2.adjacent(shared[i], shared[j])) {
        throw PreconditionError("clique_sum: shared pair " + shared[i] + "," + shared[j] +
                                " is not adjacent in the second part");
      }
    }
  }
  return {graph_union(g1, g2), std::move(shared)};
}

Graph relabel(const Graph& g, const std::vector<std::string>& labels) {
  if (static_cast<int>(labels.size()) != g.order()) {
    throw PreconditionError("relabel: label count does not match order");
  }
  return {labels, g.edges()};
}

}  // namespace orthorank
