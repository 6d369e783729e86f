#include "orthorank/json_io.hpp"

namespace orthorank {
namespace {

const char* kind_name(bool projective, bool faithful) {
  if (projective) return faithful ? "faithful-projective" : "projective";
  return faithful ? "fosr" : "osr";
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object", -1);
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + name + "\"", -1);
  return *it;
}

int int_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + name + "\" must be an integer", -1);
  return v.get<int>();
}

Complex complex_from_json(const json& e, long position) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ParseError("matrix entry must be a number or an [re, im] pair", position);
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows", -1);
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (rows == 0) return CMatrix(0, 0);
  if (!j[0].is_array()) throw ParseError("matrix row must be an array", 0);
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("matrix rows must be arrays of equal length", static_cast<long>(i));
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[k], static_cast<long>(i * cols + k));
  }
  return m;
}

json block_diagonal_to_json(const BlockDiagonal& m) {
  if (m.blocks().size() == 1) return matrix_to_json(m.blocks().front());
  json blocks = json::array();
  for (const auto& b : m.blocks()) blocks.push_back(matrix_to_json(b));
  return {{"blocks", std::move(blocks)}};
}

BlockDiagonal block_diagonal_from_json(const json& j) {
  if (j.is_object()) {
    const json& blocks = field(j, "blocks");
    if (!blocks.is_array() || blocks.empty()) throw ParseError("\"blocks\" must be a non-empty array", -1);
    std::vector<CMatrix> parts;
    for (const auto& b : blocks) {
      parts.push_back(matrix_from_json(b));
      if (parts.back().rows() != parts.back().cols()) throw ParseError("diagonal blocks must be square", -1);
    }
    return BlockDiagonal(std::move(parts));
  }
  CMatrix m = matrix_from_json(j);
  if (m.rows() != m.cols()) throw ParseError("projector must be square", -1);
  return BlockDiagonal(std::move(m));
}

json graph_to_json(const Graph& g) { return json::parse(to_edge_list_json(g)); }

Graph graph_from_json(const json& j) {
  if (j.is_string()) return parse_graph(j.get<std::string>(), GraphFormat::Graph6);
  if (!j.is_object()) throw ParseError("graph must be an edge-list object or a graph6 string", -1);
  return parse_graph(j.dump(), GraphFormat::EdgeListJson);
}

json certificate_to_json(const SubspaceRepresentation& rep) {
  json assignment = json::object();
  for (int i = 0; i < rep.graph.order(); ++i) assignment[rep.graph.label(i)] = matrix_to_json(rep.subspaces[i].basis());
  return {{"kind", kind_name(false, rep.faithful)},
          {"graph", graph_to_json(rep.graph)},
          {"d", rep.d},
          {"r", rep.r},
          {"assignment", std::move(assignment)}};
}

json certificate_to_json(const ProjectiveRepresentation& rep) {
  json assignment = json::object();
  for (int i = 0; i < rep.graph.order(); ++i) {
    assignment[rep.graph.label(i)] = block_diagonal_to_json(rep.projectors[i]);
  }
  return {{"kind", kind_name(true, rep.faithful)},
          {"graph", graph_to_json(rep.graph)},
          {"d", rep.d},
          {"r", rep.r},
          {"assignment", std::move(assignment)}};
}

json certificate_to_json(const Certificate& cert) {
  return std::visit([](const auto& c) { return certificate_to_json(c); }, cert);
}

Certificate certificate_from_json(const json& j) {
  const json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) throw ParseError("\"kind\" must be a string", -1);
  const std::string kind = kind_j.get<std::string>();
  const bool projective = kind == "projective" || kind == "faithful-projective";
  const bool faithful = kind == "fosr" || kind == "faithful-projective";
  if (!projective && kind != "osr" && kind != "fosr") throw ParseError("unknown certificate kind \"" + kind + "\"", -1);
  Graph g = graph_from_json(field(j, "graph"));
  const int d = int_field(j, "d");
  const int r = int_field(j, "r");
  const json& assignment = field(j, "assignment");
  if (!assignment.is_object()) throw ParseError("\"assignment\" must be an object keyed by vertex label", -1);
  for (const auto& [label, value] : assignment.items()) {
    if (!g.has_vertex(label)) throw ParseError("assignment for unknown vertex \"" + label + "\"", -1);
  }
  if (projective) {
    ProjectiveRepresentation rep{g, d, r, {}, faithful};
    for (const auto& label : g.labels()) rep.projectors.push_back(block_diagonal_from_json(field(assignment, label.c_str())));
    return rep;
  }
  SubspaceRepresentation rep{g, d, r, {}, faithful};
  for (const auto& label : g.labels()) rep.subspaces.emplace_back(matrix_from_json(field(assignment, label.c_str())));
  return rep;
}

json fit_to_json(const FitMatrix& fm) {
  return {{"graph", graph_to_json(fm.graph)}, {"r", fm.r}, {"matrix", matrix_to_json(fm.matrix)}};
}

FitMatrix fit_from_json(const json& j) {
  return {graph_from_json(field(j, "graph")), int_field(j, "r"), matrix_from_json(field(j, "matrix"))};
}

json report_to_json(const VerificationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json item = {{"condition", v.condition}, {"residual", v.residual}, {"u", v.u}};
    if (!v.v.empty()) item["v"] = v.v;
    violations.push_back(std::move(item));
  }
  return {{"valid", report.valid}, {"violations", std::move(violations)}};
}

json report_to_json(const BoundReport& report) {
  return {{"parameter", report.parameter},
          {"graph", graph_to_json(report.graph)},
          {"r", report.r},
          {"lower", {{"value", report.lower.value}, {"reason", report.lower.reason}}},
          {"upper",
           {{"value", report.upper.value},
            {"witness", {{"trace", report.upper.witness}, {"certificate", certificate_to_json(report.upper.certificate)}}}}},
          {"exact", report.exact}};
}

json report_to_json(const RatioSequence& seq) {
  json entries = json::array();
  for (const auto& e : seq.entries) {
    entries.push_back(
        {{"r", e.r}, {"lower", e.lower}, {"value", e.value}, {"ratio", e.ratio.str()}, {"certified", e.certified}});
  }
  return {{"parameter", seq.parameter},
          {"graph", graph_to_json(seq.graph)},
          {"entries", std::move(entries)},
          {"best_ratio", seq.best_ratio.str()},
          {"best_r", seq.best_r},
          {"bracket", {seq.bracket_lower.str(), seq.best_ratio.str()}},
          {"limit_estimate", seq.limit_estimate}};
}

json report_to_json(const DualityReport& report) {
  json demo = {{"eps", report.demo.eps}, {"verified", report.demo.verified}};
  if (report.demo.verified) {
    demo["k"] = report.demo.k;
    demo["source"] = {{"d", report.demo.source_d}, {"r", report.demo.source_r}};
    demo["faithful_b"] = report.demo.faithful_b;
    demo["d"] = report.demo.d;
    demo["r"] = report.demo.r;
    demo["value"] = report.demo.value.str();
    demo["gap"] = report.demo.gap;
  }
  return {{"graph", graph_to_json(report.graph)},
          {"xi_f_complement", report_to_json(report.xi_f_complement)},
          {"mr_f_plus", report_to_json(report.mr_f)},
          {"xi_f_complement_bracket", {report.xi_lower.str(), report.xi_upper.str()}},
          {"mr_f_plus_bracket", {report.mr_lower.str(), report.mr_upper.str()}},
          {"overlap", report.overlap},
          {"faithful_from_pair", std::move(demo)}};
}

json report_to_json(const CutVertexReport& report) {
  json pieces = json::array();
  for (const auto& p : report.pieces) {
    pieces.push_back({{"graph", graph_to_json(p.graph)},
                      {"lower", p.lower.value},
                      {"upper", p.upper.value},
                      {"exact", p.exact}});
  }
  return {{"vertex", report.vertex},
          {"pieces", std::move(pieces)},
          {"lower", report.lower},
          {"upper", report.upper},
          {"exact", report.exact}};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), static_cast<long>(e.byte));
  }
}

}  // namespace orthorank
