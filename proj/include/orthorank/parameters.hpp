#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "orthorank/fit.hpp"
#include "orthorank/heuristics.hpp"

namespace orthorank {

inline constexpr const char* kXiR = "xi_r";
inline constexpr const char* kMrrPlus = "mrr_plus";

struct SearchBudget {
  int restarts = 32;
  int iters = 2000;
  std::uint64_t seed = 0;
  /// Heuristic searches run only for r <= search_r_max; larger r rely on
  /// constructions and combine_fold.
  int search_r_max = 3;
};

struct LowerBound {
  int value = 0;
  std::string reason;
};

struct UpperBound {
  int value = 0;
  std::string witness;                 ///< construction trace
  SubspaceRepresentation certificate;  ///< OSR for xi_r, FOSR for mrr_plus
};

struct BoundReport {
  std::string parameter;
  Graph graph;
  int r = 0;
  LowerBound lower;
  UpperBound upper;
  bool exact = false;
};

/// Best known certificate per (graph, parameter, r). Safe for concurrent use;
/// on equal d the certificate with the smaller content hash is kept, so the
/// result does not depend on insertion order.
class CertificateCache {
 public:
  /// Returns true if `rep` replaced the stored entry.
  bool offer(const std::string& parameter, const SubspaceRepresentation& rep);
  [[nodiscard]] std::optional<SubspaceRepresentation> best(const std::string& parameter, const Graph& g,
                                                           int r) const;
  [[nodiscard]] std::size_t size() const;

 private:
  using Key = std::tuple<std::string, std::string, int>;
  mutable std::mutex mutex_;
  std::map<Key, std::pair<std::string, SubspaceRepresentation>> entries_;
};

struct RatioEntry {
  int r = 0;
  int lower = 0;
  int value = 0;  ///< certified upper bound
  Rational ratio;
  bool certified = false;
};

struct RatioSequence {
  std::string parameter;
  Graph graph;
  std::vector<RatioEntry> entries;
  Rational best_ratio;
  int best_r = 0;
  Rational bracket_lower;  ///< omega for xi_f, alpha for mr_f
  double limit_estimate = 0.0;
};

struct PairDemo {
  double eps = 0.0;
  int k = 0;
  int source_d = 0, source_r = 0;
  int faithful_b = 0;
  int d = 0, r = 0;
  Rational value;
  double gap = 0.0;
  bool verified = false;
};

struct DualityReport {
  Graph graph;
  RatioSequence xi_f_complement;
  RatioSequence mr_f;
  /// [lower, upper] brackets; mr_upper also takes the pair demonstration into account.
  Rational xi_lower, xi_upper, mr_lower, mr_upper;
  bool overlap = false;
  PairDemo demo;
};

struct CutVertexReport {
  std::string vertex;
  std::vector<BoundReport> pieces;
  int lower = 0;
  int upper = 0;
  bool exact = false;
};

class BoundEngine {
 public:
  explicit BoundEngine(SearchBudget budget = {}, Tolerances tol = {});

  BoundReport xi_r_bounds(const Graph& g, int r);
  BoundReport mrr_bounds(const Graph& g, int r);
  RatioSequence xi_f_estimate(const Graph& g, int r_max);
  RatioSequence mr_f_estimate(const Graph& g, int r_max);
  DualityReport duality_report(const Graph& g, int r_max, double eps = 0.05);
  /// mr⁺(g) bracket as the sum over the pieces at cut-vertex v. r must be 1.
  CutVertexReport cut_vertex_mr_plus(const Graph& g, const std::string& v, int r = 1);

  /// Adds an externally produced certificate after verifying it.
  bool offer(const std::string& parameter, const SubspaceRepresentation& rep);
  [[nodiscard]] CertificateCache& cache() { return cache_; }
  [[nodiscard]] const SearchBudget& budget() const { return budget_; }

 private:
  int mr_lower_r1(const Graph& g);

  SearchBudget budget_;
  Tolerances tol_;
  CertificateCache cache_;
  std::map<std::string, int> mr1_lower_memo_;
};

BoundReport xi_r_bounds(const Graph& g, int r, const SearchBudget& budget = {});
BoundReport mrr_bounds(const Graph& g, int r, const SearchBudget& budget = {});
RatioSequence xi_f_estimate(const Graph& g, int r_max, const SearchBudget& budget = {});
RatioSequence mr_f_estimate(const Graph& g, int r_max, const SearchBudget& budget = {});
DualityReport duality_report(const Graph& g, int r_max, const SearchBudget& budget = {}, double eps = 0.05);
CutVertexReport cut_vertex_mr_plus(const Graph& g, const std::string& v, int r = 1, const SearchBudget& budget = {});

/// Labels of g in path order if g is a path on 4 vertices.
[[nodiscard]] std::optional<std::vector<std::string>> p4_path_order(const Graph& g);

}  // namespace orthorank
