#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "berezin/inequalities.hpp"
#include "berezin/matrix_lab.hpp"
#include "berezin/range_explorer.hpp"
#include "berezin/rkhs.hpp"

namespace berezin {

/// Raised on malformed input documents; maps to the CLI parse exit code.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

// Operator document:
//   { "space": { "kind": "hardy"|"bergman"|"finite", "dim"?: n },
//     "terms": [ { "g": [[re,im],...], "h": [[re,im],...] }, ... ] }
FiniteRankOperator parse_operator_document(const nlohmann::json& doc);
nlohmann::json operator_document(const FiniteRankOperator& op);

// Matrix document: { "rows": n, "cols": n, "data": [[re,im],...] } row-major.
ComplexMatrix parse_matrix_document(const nlohmann::json& doc);
nlohmann::json matrix_document(const ComplexMatrix& m);

nlohmann::json report_json(const InequalityReport& report);

/// Provenance block embedded in every output document.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string tool_version = "0.1.0";
};

nlohmann::json manifest_json(const RunManifest& manifest);

nlohmann::json load_json_file(const std::string& path);

}  // namespace berezin
