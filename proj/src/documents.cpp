#include "berezin/documents.hpp"

#include <charconv>
#include <fstream>

namespace berezin {

namespace {

Complex parse_complex(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError(std::string(what) + ": expected [re, im]");
    }
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json complex_json(Complex c) {
    return nlohmann::json::array({c.real(), c.imag()});
}

AnalyticPolynomial parse_polynomial(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected a coefficient array");
    std::vector<Complex> coeffs;
    coeffs.reserve(j.size());
    for (const auto& entry : j) coeffs.push_back(parse_complex(entry, what));
    return AnalyticPolynomial(std::move(coeffs));
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

FiniteRankOperator parse_operator_document(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("space") || !doc.contains("terms")) {
        throw ParseError("operator document: need 'space' and 'terms'");
    }
    const auto& space_j = doc["space"];
    if (!space_j.is_object() || !space_j.contains("kind") || !space_j["kind"].is_string()) {
        throw ParseError("operator document: 'space.kind' must be a string");
    }
    std::string kind = space_j["kind"].get<std::string>();
    SpaceSpec space;
    if (kind == "hardy") {
        space = SpaceSpec::hardy();
    } else if (kind == "bergman") {
        space = SpaceSpec::bergman();
    } else if (kind == "finite") {
        if (!space_j.contains("dim") || !space_j["dim"].is_number_integer()) {
            throw ParseError("operator document: finite space needs an integer 'dim'");
        }
        int dim = space_j["dim"].get<int>();
        if (dim < 1) throw ParseError("operator document: 'dim' must be >= 1");
        space = SpaceSpec::finite(dim);
    } else {
        throw ParseError("operator document: unknown space kind '" + kind + "'");
    }

    const auto& terms_j = doc["terms"];
    if (!terms_j.is_array() || terms_j.empty()) {
        throw ParseError("operator document: 'terms' must be a nonempty array");
    }
    FiniteRankOperator op{space, {}};
    for (const auto& term : terms_j) {
        if (!term.is_object() || !term.contains("g") || !term.contains("h")) {
            throw ParseError("operator document: each term needs 'g' and 'h'");
        }
        op.terms.emplace_back(parse_polynomial(term["g"], "term g"),
                              parse_polynomial(term["h"], "term h"));
    }
    return op;
}

nlohmann::json operator_document(const FiniteRankOperator& op) {
    nlohmann::json space;
    switch (op.space.kind) {
        case SpaceKind::hardy: space["kind"] = "hardy"; break;
        case SpaceKind::bergman: space["kind"] = "bergman"; break;
        case SpaceKind::finite:
            space["kind"] = "finite";
            space["dim"] = op.space.dim;
            break;
    }
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [g, h] : op.terms) {
        nlohmann::json gj = nlohmann::json::array(), hj = nlohmann::json::array();
        for (Complex c : g.coeffs()) gj.push_back(complex_json(c));
        for (Complex c : h.coeffs()) hj.push_back(complex_json(c));
        terms.push_back({{"g", gj}, {"h", hj}});
    }
    return {{"space", space}, {"terms", terms}};
}

ComplexMatrix parse_matrix_document(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
        !doc.contains("data")) {
        throw ParseError("matrix document: need 'rows', 'cols' and 'data'");
    }
    if (!doc["rows"].is_number_integer() || !doc["cols"].is_number_integer()) {
        throw ParseError("matrix document: 'rows' and 'cols' must be integers");
    }
    int rows = doc["rows"].get<int>();
    int cols = doc["cols"].get<int>();
    if (rows < 1 || cols < 1) throw ParseError("matrix document: dimensions must be >= 1");
    const auto& data = doc["data"];
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * cols) {
        throw ParseError("matrix document: 'data' must hold rows*cols entries");
    }
    ComplexMatrix m(rows, cols);
    std::size_t idx = 0;
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = parse_complex(data[idx++], "matrix entry");
        }
    }
    return m;
}

nlohmann::json matrix_document(const ComplexMatrix& m) {
    nlohmann::json data = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) data.push_back(complex_json(m(i, j)));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

nlohmann::json report_json(const InequalityReport& report) {
    nlohmann::json out{{"name", report.name},
                       {"trials", report.trials},
                       {"violations", report.violations},
                       {"worst_margin", report.worst_margin}};
    if (report.witness) out["witness"] = matrix_document(*report.witness);
    return out;
}

nlohmann::json manifest_json(const RunManifest& manifest) {
    return {{"command", manifest.command},
            {"inputs", manifest.inputs},
            {"parameters", manifest.parameters},
            {"seed", manifest.seed},
            {"tool_version", manifest.tool_version}};
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("invalid JSON in " + path + ": " + e.what());
    }
}

}  // namespace berezin
