#include "orthorank/parameters.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace orthorank {
namespace {

std::string content_hash(const SubspaceRepresentation& rep) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 1099511628211ULL;
    }
  };
  mix(&rep.d, sizeof rep.d);
  mix(&rep.r, sizeof rep.r);
  for (const auto& s : rep.subspaces) mix(s.basis().data(), sizeof(Complex) * s.basis().size());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, int d, int r) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (tag + 1) + 0xBF58476D1CE4E5B9ULL * static_cast<std::uint64_t>(d) +
                    0x94D049BB133111EBULL * static_cast<std::uint64_t>(r);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Same labelled graph in g's vertex order.
SubspaceRepresentation reorder_to(const SubspaceRepresentation& rep, const Graph& g) {
  if (rep.graph == g) return rep;
  return transport(rep, g, rep.graph.labels());
}

Graph component_graph(const Graph& g, const std::vector<int>& comp) {
  std::vector<std::string> labels;
  for (int i : comp) labels.push_back(g.label(i));
  return induced_subgraph(g, labels);
}

Graph complete_on(const std::vector<std::string>& labels) {
  std::vector<VertexPair> edges;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j) edges.emplace_back(labels[i], labels[j]);
  return {labels, edges};
}

// OSR of a chordal graph in dimension r·ω, glued one simplicial vertex at a
// time along the reversed perfect elimination ordering.
SubspaceRepresentation chordal_osr(const Graph& g, const std::vector<int>& peo, int r, const Tolerances& tol) {
  std::vector<char> placed(g.order(), 0);
  std::optional<SubspaceRepresentation> cur;
  for (auto it = peo.rbegin(); it != peo.rend(); ++it) {
    const int v = *it;
    std::vector<std::string> clique;
    for (int u : g.neighbors(v))
      if (placed[u]) clique.push_back(g.label(u));
    std::vector<std::string> labels = clique;
    labels.push_back(g.label(v));
    const Graph k = complete_on(labels);
    const auto krep = coloring_to_osr(k, optimal_coloring(k), r, tol);
    if (!cur) {
      cur = krep;
    } else if (clique.empty()) {
      cur = pad_disjoint_union({*cur, krep}, tol);
    } else {
      cur = glue_clique_sum(*cur, krep, clique, tol);
    }
    placed[v] = 1;
  }
  return reorder_to(*cur, g);
}

SubspaceRepresentation fold_copies(const SubspaceRepresentation& base, int copies, const Tolerances& tol) {
  SubspaceRepresentation out = base;
  for (int i = 1; i < copies; ++i) out = combine_fold(out, base, tol);
  return out;
}

double tail_slope(const std::vector<RatioEntry>& entries) {
  const std::size_t m = entries.size();
  if (m == 0) return 0.0;
  if (m == 1) return entries.front().ratio.to_double();
  const std::size_t start = m / 2 > 0 && m - m / 2 >= 2 ? m / 2 : 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double count = static_cast<double>(m - start);
  for (std::size_t i = start; i < m; ++i) {
    const double x = entries[i].r;
    const double y = entries[i].value;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return entries.back().ratio.to_double();
  return (count * sxy - sx * sy) / denom;
}

struct Best {
  std::optional<UpperBound> upper;

  [[nodiscard]] int value() const { return upper ? upper->value : std::numeric_limits<int>::max(); }
};

}  // namespace

bool CertificateCache::offer(const std::string& parameter, const SubspaceRepresentation& rep) {
  Key key{parameter, rep.graph.canonical_key(), rep.r};
  std::string hash = content_hash(rep);
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    const auto& [old_hash, old] = it->second;
    if (old.d < rep.d || (old.d == rep.d && old_hash <= hash)) return false;
  }
  entries_[key] = {std::move(hash), rep};
  return true;
}

std::optional<SubspaceRepresentation> CertificateCache::best(const std::string& parameter, const Graph& g,
                                                             int r) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(Key{parameter, g.canonical_key(), r});
  if (it == entries_.end()) return std::nullopt;
  return it->second.second;
}

std::size_t CertificateCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::optional<std::vector<std::string>> p4_path_order(const Graph& g) {
  if (g.order() != 4 || g.size() != 3 || !is_connected(g)) return std::nullopt;
  int start = -1;
  for (int i = 0; i < 4; ++i) {
    if (g.degree(i) > 2) return std::nullopt;
    if (g.degree(i) == 1 && start < 0) start = i;
  }
  if (start < 0) return std::nullopt;
  std::vector<std::string> order{g.label(start)};
  int prev = -1, cur = start;
  while (static_cast<int>(order.size()) < 4) {
    int next = -1;
    for (int u : g.neighbors(cur))
      if (u != prev) next = u;
    if (next < 0) return std::nullopt;
    order.push_back(g.label(next));
    prev = cur;
    cur = next;
  }
  return order;
}

BoundEngine::BoundEngine(SearchBudget budget, Tolerances tol) : budget_(budget), tol_(tol) { tol_.validate(); }

bool BoundEngine::offer(const std::string& parameter, const SubspaceRepresentation& rep) {
  const bool faithful = parameter == kMrrPlus;
  if (parameter != kXiR && !faithful) throw PreconditionError("unknown parameter " + parameter);
  if (rep.faithful != faithful) throw PreconditionError("certificate kind does not match parameter " + parameter);
  if (!verify(rep, tol_).valid) throw PreconditionError("offered certificate does not verify");
  return cache_.offer(parameter, rep);
}

BoundReport BoundEngine::xi_r_bounds(const Graph& g, int r) {
  if (r < 1) throw PreconditionError("xi_r_bounds: r must be positive");
  if (g.order() == 0) throw PreconditionError("xi_r_bounds: graph has no vertices");
  BoundReport report{kXiR, g, r, {r * omega(g), "r*omega"}, {}, false};
  Best best;
  auto consider = [&](const SubspaceRepresentation& rep, const std::string& witness) {
    if (rep.faithful || rep.r != r || rep.d >= best.value()) return;
    auto ordered = reorder_to(rep, g);
    if (!verify_osr(ordered, tol_).valid) return;
    best.upper = UpperBound{ordered.d, witness, std::move(ordered)};
  };

  const Coloring col = optimal_coloring(g);
  consider(coloring_to_osr(g, col, r, tol_), "coloring_to_osr(chi=" + std::to_string(col.palette) + ")");
  if (auto cached = cache_.best(kXiR, g, r)) consider(*cached, "cached certificate");
  for (int s = 1; s <= r / 2; ++s) {
    auto a = cache_.best(kXiR, g, s);
    auto b = cache_.best(kXiR, g, r - s);
    if (a && b && a->d + b->d < best.value()) {
      consider(combine_fold(reorder_to(*a, g), reorder_to(*b, g), tol_),
               "combine_fold(r=" + std::to_string(s) + ", r=" + std::to_string(r - s) + ")");
    }
  }
  const auto chordal = is_chordal(g);
  if (chordal.chordal) consider(chordal_osr(g, chordal.elimination_order, r, tol_), "glue_clique_sum along a perfect elimination ordering");
  const auto comps = connected_components(g);
  if (comps.size() > 1) {
    std::vector<SubspaceRepresentation> parts;
    for (const auto& c : comps) parts.push_back(xi_r_bounds(component_graph(g, c), r).upper.certificate);
    consider(pad_disjoint_union(parts, tol_), "pad_disjoint_union over components");
  }
  if (r <= budget_.search_r_max) {
    for (int d = report.lower.value; d < best.value(); ++d) {
      if (auto found = heuristic_osr_search(g, r, d, derive_seed(budget_.seed, 1, d, r), budget_.iters,
                                            budget_.restarts, tol_)) {
        consider(*found, "heuristic_osr_search(d=" + std::to_string(d) + ")");
        break;
      }
    }
  }
  report.upper = std::move(*best.upper);
  report.exact = report.lower.value == report.upper.value;
  cache_.offer(kXiR, report.upper.certificate);
  return report;
}

int BoundEngine::mr_lower_r1(const Graph& g) {
  const std::string key = g.canonical_key();
  if (auto it = mr1_lower_memo_.find(key); it != mr1_lower_memo_.end()) return it->second;
  int best = alpha(g);
  if (g.order() >= 3 && g.order() <= 24 && is_connected(g)) {
    for (int v = 0; v < g.order(); ++v) {
      std::vector<std::string> rest;
      for (int u = 0; u < g.order(); ++u)
        if (u != v) rest.push_back(g.label(u));
      if (is_connected(induced_subgraph(g, rest))) continue;
      int sum = 0;
      for (const auto& piece : cut_vertex_components(g, g.label(v))) sum += mr_lower_r1(piece);
      best = std::max(best, sum);
    }
  }
  mr1_lower_memo_[key] = best;
  return best;
}

BoundReport BoundEngine::mrr_bounds(const Graph& g, int r) {
  if (r < 1) throw PreconditionError("mrr_bounds: r must be positive");
  if (g.order() == 0) throw PreconditionError("mrr_bounds: graph has no vertices");
  const auto comps = connected_components(g);
  BoundReport report{kMrrPlus, g, r, {0, "r*alpha summed over components"}, {}, false};
  for (const auto& c : comps) report.lower.value += r * alpha(component_graph(g, c));
  if (r == 1) {
    int cut = 0;
    for (const auto& c : comps) cut += mr_lower_r1(component_graph(g, c));
    if (cut > report.lower.value) report.lower = {cut, "cut-vertex reduction (r=1)"};
  }

  Best best;
  auto consider = [&](const SubspaceRepresentation& rep, const std::string& witness) {
    if (!rep.faithful || rep.r != r || rep.d >= best.value()) return;
    auto ordered = reorder_to(rep, g);
    if (!verify_fosr(ordered, tol_).valid) return;
    best.upper = UpperBound{ordered.d, witness, std::move(ordered)};
  };

  if (auto path = p4_path_order(g)) consider(transport(fixture_p4_fosr(r), g, *path), "fixture_p4_fosr");
  if (auto cached = cache_.best(kMrrPlus, g, r)) consider(*cached, "cached certificate");
  for (int s = 1; s <= r / 2; ++s) {
    auto a = cache_.best(kMrrPlus, g, s);
    auto b = cache_.best(kMrrPlus, g, r - s);
    if (a && b && a->d + b->d < best.value()) {
      consider(combine_fold(reorder_to(*a, g), reorder_to(*b, g), tol_),
               "combine_fold(r=" + std::to_string(s) + ", r=" + std::to_string(r - s) + ")");
    }
  }
  if (r == 1) {
    consider(canonical_faithful_rep(g, tol_), "canonical_faithful_rep");
  } else {
    auto cached_base = cache_.best(kMrrPlus, g, 1);
    const auto base = cached_base ? *cached_base : mrr_bounds(g, 1).upper.certificate;
    if (r * base.d < best.value()) {
      consider(fold_copies(reorder_to(base, g), r, tol_), "combine_fold of " + std::to_string(r) + " copies (r=1)");
    }
  }
  if (comps.size() > 1) {
    std::vector<FitMatrix> fits;
    std::vector<Graph> graphs;
    int total = 0;
    for (const auto& c : comps) {
      const auto part = mrr_bounds(component_graph(g, c), r);
      total += part.upper.value;
      fits.push_back(fosr_to_fit(part.upper.certificate, tol_));
    }
    if (total < best.value()) {
      consider(fit_to_fosr(direct_sum_fits(fits, tol_), tol_), "direct_sum_fits over components");
    }
  }
  if (r <= budget_.search_r_max) {
    const int top = std::min(best.value(), g.order() * r + 1);
    for (int d = report.lower.value; d < top; ++d) {
      if (auto found = heuristic_fit_search(g, r, d, derive_seed(budget_.seed, 2, d, r), budget_.iters,
                                            budget_.restarts, tol_)) {
        consider(fit_to_fosr(*found, tol_), "heuristic_fit_search(d=" + std::to_string(d) + ")");
        break;
      }
    }
  }
  report.upper = std::move(*best.upper);
  report.exact = report.lower.value == report.upper.value;
  cache_.offer(kMrrPlus, report.upper.certificate);
  return report;
}

namespace {

template <typename Bounds>
RatioSequence estimate(const char* name, const Graph& g, int r_max, int bracket, Bounds bounds) {
  if (r_max < 1) throw PreconditionError("r_max must be positive");
  RatioSequence seq{name, g, {}, {}, 0, Rational(bracket), 0.0};
  for (int r = 1; r <= r_max; ++r) {
    const BoundReport rep = bounds(r);
    RatioEntry e{r, rep.lower.value, rep.upper.value, Rational(rep.upper.value, r), true};
    if (seq.best_r == 0 || e.ratio < seq.best_ratio) {
      seq.best_ratio = e.ratio;
      seq.best_r = r;
    }
    seq.entries.push_back(e);
  }
  const double lo = seq.bracket_lower.to_double();
  const double hi = seq.best_ratio.to_double();
  seq.limit_estimate = std::clamp(tail_slope(seq.entries), lo, hi);
  return seq;
}

}  // namespace

RatioSequence BoundEngine::xi_f_estimate(const Graph& g, int r_max) {
  return estimate("xi_f", g, r_max, omega(g), [&](int r) { return xi_r_bounds(g, r); });
}

RatioSequence BoundEngine::mr_f_estimate(const Graph& g, int r_max) {
  return estimate("mr_f_plus", g, r_max, alpha(g), [&](int r) { return mrr_bounds(g, r); });
}

DualityReport BoundEngine::duality_report(const Graph& g, int r_max, double eps) {
  DualityReport out;
  out.graph = g;
  const Graph gc = complement(g);
  out.xi_f_complement = xi_f_estimate(gc, r_max);
  out.mr_f = mr_f_estimate(g, r_max);
  out.xi_lower = out.xi_f_complement.bracket_lower;
  out.xi_upper = out.xi_f_complement.best_ratio;
  out.mr_lower = out.mr_f.bracket_lower;
  out.mr_upper = out.mr_f.best_ratio;

  out.demo.eps = eps;
  const auto source = cache_.best(kXiR, gc, out.xi_f_complement.best_r);
  const auto faithful = cache_.best(kMrrPlus, g, 1);
  if (source && faithful) {
    try {
      const auto p = osr_to_projective(reorder_to(*source, gc), tol_);
      const auto rf = osr_to_projective(reorder_to(*faithful, g), tol_);
      const auto pair = faithful_from_pair(p, rf, eps, tol_);
      out.demo.k = pair.k;
      out.demo.source_d = p.d;
      out.demo.source_r = p.r;
      out.demo.faithful_b = rf.d;
      out.demo.d = pair.rep.d;
      out.demo.r = pair.rep.r;
      out.demo.value = pair.value;
      out.demo.gap = pair.gap;
      out.demo.verified = true;
      out.mr_upper = std::min(out.mr_upper, pair.value);
    } catch (const std::exception&) {
      out.demo.verified = false;
    }
  }
  out.overlap = std::max(out.xi_lower, out.mr_lower) <= std::min(out.xi_upper, out.mr_upper);
  return out;
}

CutVertexReport BoundEngine::cut_vertex_mr_plus(const Graph& g, const std::string& v, int r) {
  if (r != 1) {
    throw PreconditionError(
        "cut-vertex reduction does not apply for r > 1: mr_[r]+(P4) = 2r+1 < 3r = mr_[r]+(P3) + mr_[r]+(P2) "
        "at the cut-vertex between them");
  }
  CutVertexReport out;
  out.vertex = v;
  out.exact = true;
  for (const auto& piece : cut_vertex_components(g, v)) {
    out.pieces.push_back(mrr_bounds(piece, 1));
    out.lower += out.pieces.back().lower.value;
    out.upper += out.pieces.back().upper.value;
    out.exact = out.exact && out.pieces.back().exact;
  }
  return out;
}

BoundReport xi_r_bounds(const Graph& g, int r, const SearchBudget& budget) {
  return BoundEngine(budget).xi_r_bounds(g, r);
}
BoundReport mrr_bounds(const Graph& g, int r, const SearchBudget& budget) {
  return BoundEngine(budget).mrr_bounds(g, r);
}
RatioSequence xi_f_estimate(const Graph& g, int r_max, const SearchBudget& budget) {
  return BoundEngine(budget).xi_f_estimate(g, r_max);
}
RatioSequence mr_f_estimate(const Graph& g, int r_max, const SearchBudget& budget) {
  return BoundEngine(budget).mr_f_estimate(g, r_max);
}
DualityReport duality_report(const Graph& g, int r_max, const SearchBudget& budget, double eps) {
  return BoundEngine(budget).duality_report(g, r_max, eps);
}
CutVertexReport cut_vertex_mr_plus(const Graph& g, const std::string& v, int r, const SearchBudget& budget) {
  return BoundEngine(budget).cut_vertex_mr_plus(g, v, r);
}

}  // namespace orthorank
