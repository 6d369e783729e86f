#pragma once

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "orthorank/parameters.hpp"

namespace orthorank {

using json = nlohmann::json;

// Complex entries are [re, im] pairs (a bare number reads as a real entry);
// matrices are row-major nested arrays. A block-diagonal matrix with more
// than one block is written as {"blocks": [m1, m2, ...]}.
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);
json block_diagonal_to_json(const BlockDiagonal& m);
BlockDiagonal block_diagonal_from_json(const json& j);

json graph_to_json(const Graph& g);
/// Edge-list object, or a graph6 string.
Graph graph_from_json(const json& j);

using Certificate = std::variant<SubspaceRepresentation, ProjectiveRepresentation>;

/// {"kind": "osr|fosr|projective|faithful-projective", "graph", "d", "r", "assignment": {label: matrix}}
json certificate_to_json(const SubspaceRepresentation& rep);
json certificate_to_json(const ProjectiveRepresentation& rep);
json certificate_to_json(const Certificate& cert);
/// Throws ParseError on malformed input. Shape problems are left to the verifiers.
Certificate certificate_from_json(const json& j);

/// {"graph", "r", "matrix"}
json fit_to_json(const FitMatrix& fm);
FitMatrix fit_from_json(const json& j);

json report_to_json(const VerificationReport& report);
json report_to_json(const BoundReport& report);
json report_to_json(const RatioSequence& seq);
json report_to_json(const DualityReport& report);
json report_to_json(const CutVertexReport& report);

/// Parses text as JSON, turning syntax errors into ParseError with the byte offset.
json parse_json(const std::string& text);

}  // namespace orthorank
