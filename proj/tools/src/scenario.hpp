#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solvact/exact/matrix.hpp"

namespace solvact::cli {

using json = nlohmann::ordered_json;

struct Tolerances {
    double eta = 0.5;
    double derivative = 1e-6;
    double relation = 1e-8;
    std::size_t grid = 1000;
};

/// Parsed scenario document. Stage names: classify, represent, construct, verify.
struct Scenario {
    std::string name;
    std::optional<exact::RationalMatrix> matrix;
    std::vector<std::string> pipeline;
    json construction;  ///< null when absent
    json checks = json::array();
    json expect = json::object();
    Tolerances tol;
    std::uint64_t seed = 0;
    std::string hash;  ///< FNV-1a 64 of the canonical document
};

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a64(const std::string& bytes);

/// Throws InputError naming the offending field path.
exact::Rational parse_rational(const json& v, const std::string& path);
exact::RationalMatrix parse_matrix(const json& v, const std::string& path);
exact::RationalVector parse_vector(const json& v, const std::string& path);

Scenario parse_scenario(const json& doc, const std::string& default_name);
/// Reads and parses a file; JSON syntax errors become InputError with the byte offset.
Scenario load_scenario(const std::string& path);

json rational_json(const exact::Rational& r);

}  // namespace solvact::cli
