#include "orthorank/cli.hpp"

#include <algorithm>
#include <limits>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "orthorank/json_io.hpp"

namespace orthorank::cli {
namespace {

struct Options {
  std::string graph_path;
  std::string format = "edge-list-json";
  std::vector<std::string> certs;
  int r = 1;
  int rmax = 8;
  double eps = 0.05;
  std::optional<std::uint64_t> seed;
  int restarts = 32;
  int iters = 2000;
  std::string out;
  std::string clique;
  int b = 2;
  std::string vertex;
};

struct Result {
  int code = kOk;
  json payload;
};

const char* status_name(int code) {
  switch (code) {
    case kOk: return "ok";
    case kVerificationFailed: return "verification-failed";
    case kInputError: return "input-error";
    default: return "search-exhausted";
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path, -1);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GraphFormat parse_format(const std::string& name) {
  if (name == "edge-list-json") return GraphFormat::EdgeListJson;
  if (name == "graph6") return GraphFormat::Graph6;
  throw PreconditionError("unknown graph format " + name);
}

Graph load_graph(const Options& o) {
  if (o.graph_path.empty()) throw PreconditionError("--graph is required");
  return parse_graph(read_file(o.graph_path), parse_format(o.format));
}

// Accepts a bare document or the envelope written by `construct`.
json load_json(const std::string& path) {
  json doc = parse_json(read_file(path));
  if (doc.is_object() && doc.contains("status")) {
    if (doc.contains("certificate")) return doc["certificate"];
    if (doc.contains("fit")) return doc["fit"];
  }
  return doc;
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t require_seed(const Options& o) {
  if (!o.seed) throw PreconditionError("this command is randomized; pass an explicit --seed");
  return *o.seed;
}

SearchBudget budget_of(const Options& o) {
  SearchBudget b;
  b.seed = require_seed(o);
  b.restarts = o.restarts;
  b.iters = o.iters;
  return b;
}

bool is_fit_document(const json& j) { return j.is_object() && j.contains("matrix") && !j.contains("kind"); }

SubspaceRepresentation as_subspace(const Certificate& cert) {
  if (const auto* s = std::get_if<SubspaceRepresentation>(&cert)) return *s;
  return projective_to_osr(std::get<ProjectiveRepresentation>(cert));
}

ProjectiveRepresentation as_projective(const Certificate& cert) {
  if (const auto* p = std::get_if<ProjectiveRepresentation>(&cert)) return *p;
  return osr_to_projective(std::get<SubspaceRepresentation>(cert));
}

std::vector<Certificate> load_certs(const Options& o, std::size_t min_count, std::size_t max_count) {
  if (o.certs.size() < min_count || o.certs.size() > max_count) {
    throw PreconditionError("expected " + std::to_string(min_count) +
                            (max_count == min_count ? "" : " or more") + " --cert inputs");
  }
  std::vector<Certificate> out;
  for (const auto& path : o.certs) out.push_back(certificate_from_json(load_json(path)));
  return out;
}

FitMatrix load_fit(const Options& o) {
  if (o.certs.size() != 1) throw PreconditionError("expected one --cert fit-matrix input");
  return fit_from_json(load_json(o.certs.front()));
}

Result ok(json payload) { return {kOk, std::move(payload)}; }

Result cmd_verify(const Options& o) {
  if (o.certs.size() != 1) throw PreconditionError("verify takes exactly one --cert");
  const json doc = load_json(o.certs.front());
  std::optional<Graph> graph;
  if (!o.graph_path.empty()) graph = load_graph(o);
  json payload;
  VerificationReport report;
  if (is_fit_document(doc)) {
    const FitMatrix fm = fit_from_json(doc);
    report = r_fits(fm);
    if (fm.matrix.rows() == fm.matrix.cols() && fm.matrix.allFinite() && !is_psd(fm.matrix)) {
      report.add("", "", "psd", -min_eigenvalue(fm.matrix));
    }
    payload["kind"] = "fit-matrix";
    if (graph && !graph->same_labelled_graph(fm.graph)) report.add("", "", "graph-mismatch", 0.0);
  } else {
    const Certificate cert = certificate_from_json(doc);
    std::visit(
        [&](const auto& c) {
          report = verify(c);
          payload["kind"] = certificate_to_json(c)["kind"];
          payload["d"] = c.d;
          payload["r"] = c.r;
          if (graph && !graph->same_labelled_graph(c.graph)) report.add("", "", "graph-mismatch", 0.0);
        },
        cert);
  }
  payload["report"] = report_to_json(report);
  return {report.valid ? kOk : kVerificationFailed, std::move(payload)};
}

json emit(const SubspaceRepresentation& rep) { return {{"certificate", certificate_to_json(rep)}}; }
json emit(const ProjectiveRepresentation& rep) { return {{"certificate", certificate_to_json(rep)}}; }
json emit(const FitMatrix& fm) {
  return {{"fit", fit_to_json(fm)}, {"rank", rank(fm.matrix)}, {"psd", is_psd(fm.matrix)}};
}

Result cmd_construct(const std::string& recipe, const Options& o) {
  if (recipe == "combine-fold") {
    const auto c = load_certs(o, 2, 2);
    return ok(emit(combine_fold(as_subspace(c[0]), as_subspace(c[1]))));
  }
  if (recipe == "pad-disjoint") {
    std::vector<SubspaceRepresentation> parts;
    for (const auto& c : load_certs(o, 1, std::numeric_limits<std::size_t>::max())) parts.push_back(as_subspace(c));
    return ok(emit(pad_disjoint_union(parts)));
  }
  if (recipe == "stack-union") {
    const auto c = load_certs(o, 2, 2);
    return ok(emit(stack_union(as_subspace(c[0]), as_subspace(c[1]), load_graph(o))));
  }
  if (recipe == "standardize-clique") {
    const auto c = load_certs(o, 1, 1);
    return ok(emit(standardize_clique(as_subspace(c[0]), split_labels(o.clique))));
  }
  if (recipe == "glue-clique-sum") {
    const auto c = load_certs(o, 2, 2);
    const auto a = as_subspace(c[0]);
    const auto b = as_subspace(c[1]);
    std::vector<std::string> clique = split_labels(o.clique);
    if (clique.empty()) {
      for (const auto& l : a.graph.labels())
        if (b.graph.has_vertex(l)) clique.push_back(l);
    }
    return ok(emit(glue_clique_sum(a, b, clique)));
  }
  if (recipe == "coloring-osr") {
    const Graph g = load_graph(o);
    return ok(emit(coloring_to_osr(g, optimal_coloring(g), o.r)));
  }
  if (recipe == "faithful-from-pair") {
    ProjectiveRepresentation p, rf;
    if (!o.certs.empty()) {
      const auto c = load_certs(o, 2, 2);
      p = as_projective(c[0]);
      rf = as_projective(c[1]);
    } else {
      const Graph g = load_graph(o);
      const Graph gc = complement(g);
      p = osr_to_projective(coloring_to_osr(gc, optimal_coloring(gc), o.r));
      rf = osr_to_projective(canonical_faithful_rep(g));
    }
    const auto result = faithful_from_pair(p, rf, o.eps);
    json payload = emit(result.rep);
    payload["k"] = result.k;
    payload["source_value"] = result.source_value.str();
    payload["value"] = result.value.str();
    payload["gap"] = result.gap;
    payload["eps"] = o.eps;
    return ok(std::move(payload));
  }
  if (recipe == "fixture-p4-fosr") return ok(emit(fixture_p4_fosr(o.r)));
  if (recipe == "fixture-p4-osr") return ok(emit(fixture_p4_osr(o.r)));
  if (recipe == "canonical-faithful") return ok(emit(canonical_faithful_rep(load_graph(o))));
  if (recipe == "fosr-to-fit") return ok(emit(fosr_to_fit(as_subspace(load_certs(o, 1, 1)[0]))));
  if (recipe == "fit-to-fosr") return ok(emit(fit_to_fosr(load_fit(o))));
  if (recipe == "normalize-weak-fit") return ok(emit(normalize_weak_fit(load_fit(o))));
  if (recipe == "union-combine") {
    if (o.certs.size() != 2) throw PreconditionError("union-combine takes two --cert fit-matrix inputs");
    const FitMatrix a1 = fit_from_json(load_json(o.certs[0]));
    const FitMatrix a2 = fit_from_json(load_json(o.certs[1]));
    const auto result = union_combine(a1, a2, load_graph(o), require_seed(o));
    json payload = emit(result.fit);
    payload["beta"] = result.beta;
    payload["attempts"] = result.attempts;
    return ok(std::move(payload));
  }
  throw PreconditionError("unknown recipe " + recipe);
}

Result cmd_bounds(const std::string& parameter, const Options& o) {
  if (o.r < 1) throw PreconditionError("--r must be positive");
  const Graph g = load_graph(o);
  BoundEngine engine(budget_of(o));
  if (parameter == "xi-r") return ok({{"report", report_to_json(engine.xi_r_bounds(g, o.r))}});
  return ok({{"report", report_to_json(engine.mrr_bounds(g, o.r))}});
}

Result cmd_estimate(const std::string& parameter, const Options& o) {
  if (o.rmax < 1) throw PreconditionError("--rmax must be positive");
  const Graph g = load_graph(o);
  BoundEngine engine(budget_of(o));
  if (parameter == "xi-f") return ok({{"report", report_to_json(engine.xi_f_estimate(g, o.rmax))}});
  if (parameter == "mr-f") return ok({{"report", report_to_json(engine.mr_f_estimate(g, o.rmax))}});
  return ok({{"report", report_to_json(engine.duality_report(g, o.rmax, o.eps))}});
}

json labels_of(const Graph& g, const std::vector<int>& idx) {
  json out = json::array();
  for (int i : idx) out.push_back(g.label(i));
  return out;
}

Result cmd_oracle(const std::string& quantity, const Options& o) {
  const Graph g = load_graph(o);
  const int n = g.order();
  auto guard = [&](int limit) {
    if (n > limit) {
      throw PreconditionError(quantity + " is limited to graphs with at most " + std::to_string(limit) + " vertices");
    }
  };
  json payload = {{"quantity", quantity}};
  if (quantity == "alpha") {
    guard(24);
    const auto set = maximum_independent_set(g);
    payload["value"] = set.size();
    payload["witness"] = labels_of(g, set);
  } else if (quantity == "omega") {
    guard(24);
    const auto clique = maximum_clique(g);
    payload["value"] = clique.size();
    payload["witness"] = labels_of(g, clique);
  } else if (quantity == "chi") {
    guard(24);
    const Coloring col = optimal_coloring(g);
    payload["value"] = col.palette;
    json colors = json::object();
    for (int i = 0; i < n; ++i) colors[g.label(i)] = col.colors[i].front();
    payload["witness"] = colors;
  } else if (quantity == "chi-b") {
    guard(24);
    if (o.b < 1) throw PreconditionError("--b must be positive");
    const int c = chi_b(g, o.b);
    payload["b"] = o.b;
    payload["value"] = c;
    const auto col = b_fold_coloring(g, c, o.b);
    json colors = json::object();
    for (int i = 0; i < n; ++i) colors[g.label(i)] = col->colors[i];
    payload["witness"] = colors;
  } else if (quantity == "chi-f") {
    guard(16);
    const auto fc = fractional_coloring(g);
    payload["value"] = fc.value.str();
    json weights = json::array();
    for (const auto& [set, w] : fc.weights) weights.push_back({{"set", labels_of(g, set)}, {"weight", w.str()}});
    payload["witness"] = weights;
  } else if (quantity == "chordal") {
    const auto res = is_chordal(g);
    payload["value"] = res.chordal;
    payload["witness"] = res.chordal ? json{{"elimination_order", labels_of(g, res.elimination_order)}}
                                     : json{{"induced_cycle", labels_of(g, res.long_cycle)}};
  } else if (quantity == "cut-components") {
    if (o.vertex.empty()) throw PreconditionError("--vertex is required");
    json pieces = json::array();
    for (const auto& piece : cut_vertex_components(g, o.vertex)) pieces.push_back(graph_to_json(piece));
    payload["vertex"] = o.vertex;
    payload["value"] = pieces;
  } else if (quantity == "cut-mr-plus") {
    if (o.vertex.empty()) throw PreconditionError("--vertex is required");
    payload["value"] = report_to_json(cut_vertex_mr_plus(g, o.vertex, o.r, budget_of(o)));
  }
  return ok(std::move(payload));
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--graph", o.graph_path, "graph file");
  sub->add_option("--format", o.format, "edge-list-json or graph6")
      ->check(CLI::IsMember({"edge-list-json", "graph6"}));
  sub->add_option("--cert", o.certs, "certificate or fit-matrix JSON file (repeatable)");
  sub->add_option("--r", o.r, "fold r");
  sub->add_option("--rmax", o.rmax, "largest r for estimates");
  sub->add_option("--eps", o.eps, "accuracy for faithful-from-pair");
  sub->add_option("--seed", o.seed, "seed for randomized steps");
  sub->add_option("--restarts", o.restarts, "restarts per heuristic search");
  sub->add_option("--iters", o.iters, "iterations per restart");
  sub->add_option("--out", o.out, "write the JSON payload here instead of stdout");
  sub->add_option("--clique", o.clique, "comma-separated vertex labels");
  sub->add_option("--b", o.b, "fold for chi-b");
  sub->add_option("--vertex", o.vertex, "cut vertex label");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonal and faithful subspace representations of graphs"};
  app.require_subcommand(1);
  Options o;
  std::string choice;

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate or fit matrix");
  add_common(verify_cmd, o);
  auto* construct_cmd = app.add_subcommand("construct", "run a construction and emit the verified result");
  construct_cmd->add_option("recipe", choice)
      ->required()
      ->check(CLI::IsMember({"combine-fold", "pad-disjoint", "stack-union", "standardize-clique", "glue-clique-sum",
                             "coloring-osr", "faithful-from-pair", "fixture-p4-fosr", "fixture-p4-osr",
                             "canonical-faithful", "fosr-to-fit", "fit-to-fosr", "normalize-weak-fit",
                             "union-combine"}));
  add_common(construct_cmd, o);
  auto* bounds_cmd = app.add_subcommand("bounds", "certified bounds for xi_[r] or mr_[r]+");
  bounds_cmd->add_option("parameter", choice)->required()->check(CLI::IsMember({"xi-r", "mrr-plus"}));
  add_common(bounds_cmd, o);
  auto* estimate_cmd = app.add_subcommand("estimate", "fractional ratio sequences and the duality report");
  estimate_cmd->add_option("parameter", choice)->required()->check(CLI::IsMember({"xi-f", "mr-f", "duality"}));
  add_common(estimate_cmd, o);
  auto* oracle_cmd = app.add_subcommand("oracle", "exact combinatorial parameters");
  oracle_cmd->add_option("quantity", choice)
      ->required()
      ->check(CLI::IsMember({"alpha", "omega", "chi", "chi-f", "chi-b", "chordal", "cut-components", "cut-mr-plus"}));
  add_common(oracle_cmd, o);

  Result result;
  std::string command;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    const auto* sub = app.get_subcommands().front();
    command = sub->get_name();
    if (command == "verify") {
      result = cmd_verify(o);
    } else if (command == "construct") {
      result = cmd_construct(choice, o);
    } else if (command == "bounds") {
      result = cmd_bounds(choice, o);
    } else if (command == "estimate") {
      result = cmd_estimate(choice, o);
    } else {
      result = cmd_oracle(choice, o);
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    result = {kInputError, {{"error", e.what()}}};
  } catch (const ParseError& e) {
    result = {kInputError, {{"error", e.what()}}};
  } catch (const PreconditionError& e) {
    result = {kInputError, {{"error", e.what()}}};
  } catch (const json::exception& e) {
    result = {kInputError, {{"error", e.what()}}};
  } catch (const VerificationFailure& e) {
    result = {kVerificationFailed, {{"error", e.what()}}};
  } catch (const SearchExhausted& e) {
    result = {kSearchExhausted, {{"error", e.what()}}};
  } catch (const std::exception& e) {
    result = {kInputError, {{"error", e.what()}}};
  }
  if (result.payload.contains("error")) err << "orthorank: " << result.payload["error"].get<std::string>() << "\n";
  result.payload["status"] = status_name(result.code);
  if (!command.empty()) result.payload["command"] = command;
  const std::string text = result.payload.dump(2) + "\n";
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "orthorank: cannot write " << o.out << "\n";
      out << json{{"status", status_name(kInputError)}, {"error", "cannot write " + o.out}}.dump(2) << "\n";
      return kInputError;
    }
    f << text;
  } else {
    out << text;
  }
  return result.code;
}

}  // namespace orthorank::cli
