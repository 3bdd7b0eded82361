#include "scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "solvact/errors.hpp"

namespace solvact::cli {

namespace {

const std::vector<std::string> kStages{"classify", "represent", "construct", "verify"};
const std::vector<std::string> kNeedsRepresentation{"homomorphism", "faithfulness", "multiplier",
                                                    "conjugacy"};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InputError(path + ": " + what);
}

double number(const json& doc, const char* key, double fallback, const std::string& path) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number()) fail(path + "." + key, "expected a number");
    return doc[key].get<double>();
}

}  // namespace

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json rational_json(const exact::Rational& r) { return r.str(); }

exact::Rational parse_rational(const json& v, const std::string& path) {
    if (v.is_number_integer()) return exact::Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return exact::Rational::parse(v.get<std::string>());
        } catch (const InputError& e) {
            fail(path, e.what());
        }
    }
    fail(path, "expected an integer or a \"p/q\" string");
}

exact::RationalVector parse_vector(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "expected an array");
    exact::RationalVector out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(parse_rational(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

exact::RationalMatrix parse_matrix(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of rows");
    std::vector<exact::RationalVector> rows;
    for (std::size_t i = 0; i < v.size(); ++i) {
        rows.push_back(parse_vector(v[i], path + "[" + std::to_string(i) + "]"));
        if (rows.back().size() != rows.front().size()) fail(path + "[" + std::to_string(i) + "]", "ragged row");
    }
    if (rows.size() != rows.front().size()) fail(path, "matrix must be square");
    return exact::RationalMatrix::from_rows(rows);
}

Scenario parse_scenario(const json& doc, const std::string& default_name) {
    if (!doc.is_object()) fail("$", "scenario must be a JSON object");
    Scenario s;
    s.hash = fnv1a64(doc.dump());
    s.name = default_name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) fail("name", "expected a string");
        s.name = doc["name"].get<std::string>();
    }
    if (doc.contains("matrix")) s.matrix = parse_matrix(doc["matrix"], "matrix");

    if (doc.contains("construction") && !doc["construction"].is_null()) {
        const json& c = doc["construction"];
        if (!c.is_object() || !c.contains("kind") || !c["kind"].is_string())
            fail("construction", "expected an object with a string \"kind\"");
        std::string kind = c["kind"].get<std::string>();
        if (kind != "gs" && kind != "flowblock" && kind != "denjoy")
            fail("construction.kind", "unknown construction \"" + kind + "\" (gs, flowblock, denjoy)");
        s.construction = c;
    }
    if (doc.contains("verify")) {
        if (!doc["verify"].is_array()) fail("verify", "expected an array of checks");
        for (std::size_t i = 0; i < doc["verify"].size(); ++i) {
            const json& c = doc["verify"][i];
            if (!c.is_object() || !c.contains("check") || !c["check"].is_string())
                fail("verify[" + std::to_string(i) + "]", "expected an object with a string \"check\"");
        }
        s.checks = doc["verify"];
    }
    if (doc.contains("expect")) {
        if (!doc["expect"].is_object()) fail("expect", "expected an object");
        s.expect = doc["expect"];
    }
    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        if (!t.is_object()) fail("tolerances", "expected an object");
        s.tol.eta = number(t, "eta", s.tol.eta, "tolerances");
        s.tol.derivative = number(t, "derivative", s.tol.derivative, "tolerances");
        s.tol.relation = number(t, "relation", s.tol.relation, "tolerances");
        s.tol.grid = static_cast<std::size_t>(number(t, "grid", static_cast<double>(s.tol.grid), "tolerances"));
        if (!(s.tol.eta > 0) || !(s.tol.derivative > 0) || !(s.tol.relation > 0) || s.tol.grid < 2)
            fail("tolerances", "tolerances must be positive and grid >= 2");
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a nonnegative integer");
        s.seed = doc["seed"].get<std::uint64_t>();
    }

    if (doc.contains("pipeline")) {
        const json& p = doc["pipeline"];
        if (!p.is_array()) fail("pipeline", "expected an array of stage names");
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!p[i].is_string()) fail("pipeline[" + std::to_string(i) + "]", "expected a stage name");
            s.pipeline.push_back(p[i].get<std::string>());
        }
    } else {
        s.pipeline = {"classify", "represent"};
        if (!s.construction.is_null()) s.pipeline.push_back("construct");
        if (!s.checks.empty()) s.pipeline.push_back("verify");
    }

    long last = -1;
    for (std::size_t i = 0; i < s.pipeline.size(); ++i) {
        auto it = std::find(kStages.begin(), kStages.end(), s.pipeline[i]);
        std::string path = "pipeline[" + std::to_string(i) + "]";
        if (it == kStages.end()) fail(path, "unknown stage \"" + s.pipeline[i] + "\"");
        long pos = it - kStages.begin();
        if (pos <= last) fail(path, "stages must follow classify, represent, construct, verify without repeats");
        last = pos;
    }
    auto has = [&](const std::string& st) {
        return std::find(s.pipeline.begin(), s.pipeline.end(), st) != s.pipeline.end();
    };
    if (has("construct") && s.construction.is_null()) fail("pipeline", "stage construct needs a construction");
    if (!s.matrix && (has("classify") || has("represent") || has("construct")))
        fail("matrix", "required by the pipeline");
    for (std::size_t i = 0; i < s.checks.size(); ++i) {
        std::string c = s.checks[i]["check"].get<std::string>();
        if (std::find(kNeedsRepresentation.begin(), kNeedsRepresentation.end(), c) !=
                kNeedsRepresentation.end() &&
            !has("represent"))
            fail("verify[" + std::to_string(i) + "]", "check \"" + c + "\" needs the represent stage");
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open scenario file");
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw InputError(path + ": JSON syntax error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    try {
        return parse_scenario(doc, std::filesystem::path(path).stem().string());
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace solvact::cli
