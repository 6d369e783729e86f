#pragma once

// Independent oracles and seeded generators shared by the test binaries.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "orthorank/fit.hpp"
#include "orthorank/graph.hpp"
#include "orthorank/graph_algorithms.hpp"
#include "orthorank/linalg.hpp"
#include "orthorank/representations.hpp"

namespace testsupport {

using namespace orthorank;

inline std::vector<std::string> numbered(int n, int first = 1) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(first + i));
  return labels;
}

inline Graph graph_from_mask(int n, std::uint64_t mask) {
  std::vector<std::pair<int, int>> edges;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (mask >> bit & 1U) edges.emplace_back(i, j);
  return {numbered(n), edges};
}

inline std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
  std::vector<std::uint32_t> adj(g.order(), 0);
  for (auto [a, b] : g.edges()) {
    adj[a] |= 1U << b;
    adj[b] |= 1U << a;
  }
  return adj;
}

inline bool independent_mask(const std::vector<std::uint32_t>& adj, std::uint32_t s) {
  for (std::size_t v = 0; v < adj.size(); ++v)
    if ((s >> v & 1U) && (adj[v] & s)) return false;
  return true;
}

/// Largest independent subset, by listing all 2^n subsets.
inline int naive_alpha(const Graph& g) {
  const auto adj = adjacency_masks(g);
  int best = 0;
  for (std::uint32_t s = 0; s < (1U << g.order()); ++s)
    if (independent_mask(adj, s)) best = std::max(best, std::popcount(s));
  return best;
}

inline int naive_omega(const Graph& g) {
  const auto adj = adjacency_masks(g);
  int best = 0;
  for (std::uint32_t s = 0; s < (1U << g.order()); ++s) {
    bool clique = true;
    for (int v = 0; v < g.order() && clique; ++v)
      if ((s >> v & 1U) && ((s & ~(1U << v)) & ~adj[v])) clique = false;
    if (clique) best = std::max(best, std::popcount(s));
  }
  return best;
}

/// Fewest independent sets covering V, by dynamic programming over subsets.
inline int naive_chi(const Graph& g) {
  const int n = g.order();
  if (n == 0) return 0;
  const auto adj = adjacency_masks(g);
  const std::uint32_t full = (1U << n) - 1;
  std::vector<char> indep(full + 1);
  for (std::uint32_t s = 0; s <= full; ++s) indep[s] = independent_mask(adj, s);
  std::vector<int> dp(full + 1, n + 1);
  dp[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    for (std::uint32_t t = s; t; t = (t - 1) & s)
      if (indep[t]) dp[s] = std::min(dp[s], dp[s ^ t] + 1);
  }
  return dp[full];
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return {numbered(n), edges};
}

/// Chordal graph on n vertices grown by clique-sums of complete graphs: each
/// new vertex joins a random clique of the current graph (possibly empty).
inline Graph random_chordal(int n, std::mt19937_64& rng) {
  std::vector<std::vector<int>> cliques{{0}};
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    const auto& host = cliques[std::uniform_int_distribution<std::size_t>(0, cliques.size() - 1)(rng)];
    std::vector<int> attach;
    for (int u : host)
      if (std::bernoulli_distribution(0.7)(rng)) attach.push_back(u);
    for (int u : attach) edges.emplace_back(u, v);
    attach.push_back(v);
    cliques.push_back(attach);
  }
  return {numbered(n), edges};
}

inline double relative_difference(const CMatrix& a, const CMatrix& b) {
  return (a - b).norm() / std::max(1.0, b.norm());
}

/// Verified faithful representation from the fit I + t W, W a random
/// Hermitian matrix supported on the edge blocks.
inline SubspaceRepresentation random_fosr(const Graph& g, int r, std::mt19937_64& rng) {
  const int n = g.order();
  const long m = static_cast<long>(n) * r;
  CMatrix w = CMatrix::Zero(m, m);
  for (auto [a, b] : g.edges()) {
    CMatrix blk = random_gaussian(r, r, rng);
    blk /= blk.norm();
    w.block(a * r, b * r, r, r) = blk;
    w.block(b * r, a * r, r, r) = blk.adjoint();
  }
  const double spread = w.size() ? Eigen::SelfAdjointEigenSolver<CMatrix>(w).eigenvalues().cwiseAbs().maxCoeff() : 0.0;
  const double t = 0.5 / std::max(1.0, spread);
  FitMatrix fm{g, r, CMatrix::Identity(m, m) + t * w};
  return fit_to_fosr(fm);
}

/// Verified orthogonal representation of g: a faithful representation of
/// the complement is orthogonal on every edge of g.
inline SubspaceRepresentation random_osr(const Graph& g, int r, std::mt19937_64& rng) {
  auto rep = random_fosr(complement(g), r, rng);
  rep.graph = g;
  rep.faithful = false;
  return rep;
}

}  // namespace testsupport
