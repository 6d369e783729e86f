#include "orthorank/graph_algorithms.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <functional>

#include <boost/multiprecision/cpp_int.hpp>

namespace orthorank {
namespace {

using Mask = std::uint64_t;

void require_mask_size(const Graph& g, const char* who) {
  if (g.order() > 64) {
    throw PreconditionError(std::string(who) + ": exact search supports at most 64 vertices");
  }
}

std::vector<Mask> adjacency_masks(const Graph& g) {
  std::vector<Mask> adj(g.order(), 0);
  for (auto [a, b] : g.edges()) {
    adj[a] |= Mask{1} << b;
    adj[b] |= Mask{1} << a;
  }
  return adj;
}

Mask full_mask(int n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

std::vector<int> mask_to_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

class IndependentSetSearch {
 public:
  explicit IndependentSetSearch(const Graph& g) : adj_(adjacency_masks(g)) {}

  Mask run(int n) {
    best_size_ = 0;
    best_ = 0;
    branch(full_mask(n), 0, 0);
    return best_;
  }

 private:
  void branch(Mask candidates, Mask chosen, int count) {
    if (candidates == 0) {
      if (count > best_size_) {
        best_size_ = count;
        best_ = chosen;
      }
      return;
    }
    if (count + std::popcount(candidates) <= best_size_) return;
    // Pivot on the minimum-degree candidate; lowest index breaks ties.
    int pivot = -1;
    int pivot_deg = 65;
    for (Mask m = candidates; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int d = std::popcount(adj_[v] & candidates);
      if (d < pivot_deg) {
        pivot_deg = d;
        pivot = v;
      }
    }
    // Some maximum independent set meets the closed neighbourhood of the pivot.
    const Mask closed = (adj_[pivot] | (Mask{1} << pivot)) & candidates;
    for (Mask m = closed; m; m &= m - 1) {
      const int w = std::countr_zero(m);
      branch(candidates & ~(adj_[w] | (Mask{1} << w)), chosen | (Mask{1} << w), count + 1);
    }
  }

  std::vector<Mask> adj_;
  int best_size_ = 0;
  Mask best_ = 0;
};

class ColoringSearch {
 public:
  ColoringSearch(const Graph& g, int k) : g_(g), k_(k), color_(g.order(), -1) {}

  bool run() { return step(0, 0); }
  const std::vector<int>& colors() const { return color_; }

 private:
  bool step(int colored, int used) {
    if (colored == g_.order()) return true;
    // DSATUR choice: most distinct neighbour colours, then degree, then index.
    int pick = -1;
    int best_sat = -1;
    int best_deg = -1;
    for (int v = 0; v < g_.order(); ++v) {
      if (color_[v] >= 0) continue;
      Mask seen = 0;
      for (int w : g_.neighbors(v))
        if (color_[w] >= 0) seen |= Mask{1} << color_[w];
      const int sat = std::popcount(seen);
      if (sat > best_sat || (sat == best_sat && g_.degree(v) > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = g_.degree(v);
      }
    }
    Mask forbidden = 0;
    for (int w : g_.neighbors(pick))
      if (color_[w] >= 0) forbidden |= Mask{1} << color_[w];
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      if (forbidden & (Mask{1} << c)) continue;
      color_[pick] = c;
      if (step(colored + 1, std::max(used, c + 1))) return true;
    }
    color_[pick] = -1;
    return false;
  }

  const Graph& g_;
  int k_;
  std::vector<int> color_;
};

class FoldColoringSearch {
 public:
  FoldColoringSearch(const Graph& g, int palette, int fold)
      : g_(g), palette_(palette), fold_(fold), assigned_(g.order(), 0) {
    order_.resize(g.order());
    for (int i = 0; i < g.order(); ++i) order_[i] = i;
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
  }

  bool run() { return place(0, 0); }
  const std::vector<Mask>& assigned() const { return assigned_; }

 private:
  // Colours [0, used) have appeared; unused colours are interchangeable, so a
  // vertex only ever opens the lowest unused ones.
  bool place(int pos, int used) {
    if (pos == g_.order()) return true;
    const int v = order_[pos];
    Mask forbidden = 0;
    for (int w : g_.neighbors(v)) forbidden |= assigned_[w];
    const Mask old_free = full_mask(used) & ~forbidden;
    const int max_new = std::min(fold_, palette_ - used);
    for (int fresh = 0; fresh <= max_new; ++fresh) {
      const int need_old = fold_ - fresh;
      if (std::popcount(old_free) < need_old) continue;
      const Mask fresh_bits = full_mask(used + fresh) & ~full_mask(used);
      const auto pool = mask_to_indices(old_free);
      if (choose(pos, v, used + fresh, fresh_bits, pool, 0, need_old, 0)) return true;
    }
    assigned_[v] = 0;
    return false;
  }

  bool choose(int pos, int v, int used, Mask fresh_bits, const std::vector<int>& pool,
              std::size_t from, int remaining, Mask picked) {
    if (remaining == 0) {
      assigned_[v] = picked | fresh_bits;
      return place(pos + 1, used);
    }
    for (std::size_t i = from; i + remaining <= pool.size(); ++i) {
      if (choose(pos, v, used, fresh_bits, pool, i + 1, remaining - 1,
                 picked | (Mask{1} << pool[i])))
        return true;
    }
    return false;
  }

  const Graph& g_;
  int palette_;
  int fold_;
  std::vector<int> order_;
  std::vector<Mask> assigned_;
};

}  // namespace

bool Coloring::is_proper_for(const Graph& g) const {
  if (static_cast<int>(colors.size()) != g.order() || fold < 1) return false;
  for (const auto& set : colors) {
    if (static_cast<int>(set.size()) != fold) return false;
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] < 1 || set[i] > palette) return false;
      if (i > 0 && set[i] <= set[i - 1]) return false;
    }
  }
  for (auto [a, b] : g.edges()) {
    std::vector<int> common;
    std::set_intersection(colors[a].begin(), colors[a].end(), colors[b].begin(), colors[b].end(),
                          std::back_inserter(common));
    if (!common.empty()) return false;
  }
  return true;
}

std::vector<int> maximum_independent_set(const Graph& g) {
  require_mask_size(g, "alpha");
  if (g.order() == 0) return {};
  return mask_to_indices(IndependentSetSearch(g).run(g.order()));
}

std::vector<int> maximum_clique(const Graph& g) { return maximum_independent_set(complement(g)); }

int alpha(const Graph& g) { return static_cast<int>(maximum_independent_set(g).size()); }

int omega(const Graph& g) { return alpha(complement(g)); }

Coloring optimal_coloring(const Graph& g) {
  require_mask_size(g, "chi");
  Coloring out;
  if (g.order() == 0) return out;
  for (int k = std::max(1, omega(g));; ++k) {
    ColoringSearch search(g, k);
    if (search.run()) {
      out.palette = k;
      out.fold = 1;
      for (int c : search.colors()) out.colors.push_back({c + 1});
      return out;
    }
  }
}

int chi(const Graph& g) { return optimal_coloring(g).palette; }

std::optional<Coloring> b_fold_coloring(const Graph& g, int palette, int fold) {
  if (fold < 1 || palette < fold) throw PreconditionError("b_fold_coloring: need c >= b >= 1");
  require_mask_size(g, "b_fold_coloring");
  if (palette > 64) throw PreconditionError("b_fold_coloring: palette limited to 64 colors");
  FoldColoringSearch search(g, palette, fold);
  if (!search.run()) return std::nullopt;
  Coloring out{palette, fold, {}};
  for (Mask m : search.assigned()) {
    std::vector<int> set;
    for (int c : mask_to_indices(m)) set.push_back(c + 1);
    out.colors.push_back(std::move(set));
  }
  return out;
}

int chi_b(const Graph& g, int fold) {
  if (fold < 1) throw PreconditionError("chi_b: fold must be positive");
  if (g.order() == 0) return 0;
  const int upper = fold * chi(g);
  for (int c = fold * omega(g); c < upper; ++c) {
    if (b_fold_coloring(g, c, fold)) return c;
  }
  return upper;
}

std::vector<std::vector<int>> maximal_independent_sets(const Graph& g) {
  require_mask_size(g, "maximal_independent_sets");
  const int n = g.order();
  std::vector<std::vector<int>> out;
  if (n == 0) return out;
  // Bron-Kerbosch with pivoting on the complement.
  auto adj = adjacency_masks(g);
  std::vector<Mask> co(n);
  for (int v = 0; v < n; ++v) co[v] = full_mask(n) & ~adj[v] & ~(Mask{1} << v);
  std::function<void(Mask, Mask, Mask)> bk = [&](Mask r, Mask p, Mask x) {
    if (p == 0 && x == 0) {
      out.push_back(mask_to_indices(r));
      return;
    }
    const Mask px = p | x;
    int pivot = std::countr_zero(px);
    int best = -1;
    for (Mask m = px; m; m &= m - 1) {
      const int u = std::countr_zero(m);
      const int c = std::popcount(p & co[u]);
      if (c > best) {
        best = c;
        pivot = u;
      }
    }
    for (Mask m = p & ~co[pivot]; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const Mask bit = Mask{1} << v;
      bk(r | bit, p & co[v], x & co[v]);
      p &= ~bit;
      x |= bit;
    }
  };
  bk(0, full_mask(n), 0);
  std::sort(out.begin(), out.end());
  return out;
}

FractionalColoring fractional_coloring(const Graph& g) {
  using boost::multiprecision::cpp_rational;
  FractionalColoring result{Rational(0), {}};
  const int n = g.order();
  if (n == 0) return result;
  const auto sets = maximal_independent_sets(g);
  const int m = static_cast<int>(sets.size());

  // Dual LP in standard form: max sum(y) s.t. sum_{v in I} y_v <= 1 for every
  // maximal independent set I, y >= 0. The slack basis is feasible, so no
  // phase one is needed; Bland's rule guarantees termination.
  const int cols = n + m;
  std::vector<std::vector<cpp_rational>> a(m, std::vector<cpp_rational>(cols, 0));
  std::vector<cpp_rational> rhs(m, 1);
  std::vector<cpp_rational> cost(cols, 0);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    for (int v : sets[i]) a[i][v] = 1;
    a[i][n + i] = 1;
    basis[i] = n + i;
  }
  for (int v = 0; v < n; ++v) cost[v] = -1;
  cpp_rational objective = 0;

  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    cpp_rational best_ratio;
    for (int i = 0; i < m; ++i) {
      if (a[i][enter] <= 0) continue;
      cpp_rational ratio = rhs[i] / a[i][enter];
      if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Unbounded is impossible: every vertex lies in some maximal independent set.
    const cpp_rational pivot = a[leave][enter];
    for (auto& x : a[leave]) x /= pivot;
    rhs[leave] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave || a[i][enter] == 0) continue;
      const cpp_rational f = a[i][enter];
      for (int j = 0; j < cols; ++j) a[i][j] -= f * a[leave][j];
      rhs[i] -= f * rhs[leave];
    }
    const cpp_rational f = cost[enter];
    for (int j = 0; j < cols; ++j) cost[j] -= f * a[leave][j];
    objective -= f * rhs[leave];
    basis[leave] = enter;
  }

  auto to_rational = [](const cpp_rational& q) {
    return Rational(static_cast<std::int64_t>(numerator(q)), static_cast<std::int64_t>(denominator(q)));
  };
  result.value = to_rational(objective);
  for (int i = 0; i < m; ++i) {
    if (cost[n + i] > 0) result.weights.emplace_back(sets[i], to_rational(cost[n + i]));
  }
  return result;
}

Rational chi_f(const Graph& g) { return fractional_coloring(g).value; }

ChordalityResult is_chordal(const Graph& g) {
  const int n = g.order();
  ChordalityResult result;
  // Maximum cardinality search; its reverse visit order is a perfect
  // elimination ordering exactly when g is chordal.
  std::vector<int> weight(n, 0);
  std::vector<char> visited(n, 0);
  std::vector<int> visit;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!visited[v] && (pick < 0 || weight[v] > weight[pick])) pick = v;
    visited[pick] = 1;
    visit.push_back(pick);
    for (int w : g.neighbors(pick))
      if (!visited[w]) ++weight[w];
  }
  std::vector<int> peo(visit.rbegin(), visit.rend());
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[peo[i]] = i;

  bool ok = true;
  for (int i = 0; i < n && ok; ++i) {
    const int v = peo[i];
    int parent = -1;
    for (int w : g.neighbors(v))
      if (position[w] > i && (parent < 0 || position[w] < position[parent])) parent = w;
    if (parent < 0) continue;
    for (int w : g.neighbors(v)) {
      if (position[w] > i && w != parent && !g.adjacent(w, parent)) {
        ok = false;
        break;
      }
    }
  }
  if (ok) {
    result.chordal = true;
    result.elimination_order = std::move(peo);
    return result;
  }

  // An induced cycle of length >= 4 through x with neighbours u, w exists iff
  // u reaches w while avoiding the rest of N[x]; a shortest such path is chordless.
  for (int x = 0; x < n; ++x) {
    const auto& nx = g.neighbors(x);
    for (std::size_t i = 0; i < nx.size(); ++i) {
      for (std::size_t j = i + 1; j < nx.size(); ++j) {
        const int u = nx[i];
        const int w = nx[j];
        if (g.adjacent(u, w)) continue;
        std::vector<char> blocked(n, 0);
        blocked[x] = 1;
        for (int y : nx)
          if (y != u && y != w) blocked[y] = 1;
        std::vector<int> prev(n, -1);
        std::deque<int> queue{u};
        prev[u] = u;
        while (!queue.empty() && prev[w] < 0) {
          const int a = queue.front();
          queue.pop_front();
          for (int b : g.neighbors(a)) {
            if (blocked[b] || prev[b] >= 0) continue;
            prev[b] = a;
            queue.push_back(b);
          }
        }
        if (prev[w] < 0) continue;
        std::vector<int> path;
        for (int c = w; c != u; c = prev[c]) path.push_back(c);
        path.push_back(u);
        std::reverse(path.begin(), path.end());
        result.long_cycle.push_back(x);
        result.long_cycle.insert(result.long_cycle.end(), path.begin(), path.end());
        return result;
      }
    }
  }
  return result;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
  const int n = g.order();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s};
    comp[s] = static_cast<int>(out.size());
    for (std::size_t k = 0; k < members.size(); ++k) {
      for (int w : g.neighbors(members[k])) {
        if (comp[w] < 0) {
          comp[w] = comp[s];
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

std::vector<Graph> cut_vertex_components(const Graph& g, const std::string& v) {
  if (g.order() < 2) throw PreconditionError("cut-vertex reduction needs at least 2 vertices");
  if (!is_connected(g)) throw PreconditionError("cut-vertex reduction needs a connected graph");
  const int cut = g.index(v);
  std::vector<std::string> rest;
  for (int i = 0; i < g.order(); ++i)
    if (i != cut) rest.push_back(g.label(i));
  const Graph without = induced_subgraph(g, rest);
  const auto comps = connected_components(without);
  if (comps.size() < 2) throw PreconditionError("vertex '" + v + "' is not a cut-vertex");
  std::vector<Graph> out;
  for (const auto& comp : comps) {
    std::vector<std::string> keep{v};
    for (int i : comp) keep.push_back(without.label(i));
    out.push_back(induced_subgraph(g, keep));
  }
  return out;
}

}  // namespace orthorank
