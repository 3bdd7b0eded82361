#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "pipeline.hpp"
#include "scenario.hpp"
#include "solvact/errors.hpp"

namespace fs = std::filesystem;
using namespace solvact::cli;
using solvact::InputError;

namespace {

struct Proc {
    int code = -1;
    std::string out;
};

Proc run(const std::string& args) {
    Proc p;
    std::string cmd = std::string(SOLVACT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) return p;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) p.out.append(buf.data(), n);
    int status = pclose(f);
    p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("solvact-test-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST(Scenario, Fnv1a64) {
    EXPECT_EQ(fnv1a64(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a64("a"), "af63dc4c8601ec8c");
}

TEST(Scenario, RationalLiterals) {
    EXPECT_EQ(parse_rational(json(3), "x"), solvact::exact::Rational(3));
    EXPECT_EQ(parse_rational(json("-3/6"), "x"), solvact::exact::Rational(-1, 2));
    EXPECT_THROW(parse_rational(json("1/0"), "x"), InputError);
    EXPECT_THROW(parse_rational(json(0.5), "x"), InputError);
    try {
        parse_matrix(json::parse(R"([[1, 2], [3]])"), "matrix");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("matrix"), std::string::npos);
    }
}

TEST(Scenario, DefaultPipelineAndValidation) {
    auto s = parse_scenario(json::parse(R"({"matrix": [[2]], "verify": [{"check": "relations"}]})"), "x");
    EXPECT_EQ(s.name, "x");
    EXPECT_EQ(s.pipeline, (std::vector<std::string>{"classify", "represent", "verify"}));
    EXPECT_THROW(parse_scenario(json::parse(R"({"matrix": [[2]], "pipeline": ["verify", "classify"]})"), "x"),
                 InputError);
    EXPECT_THROW(parse_scenario(json::parse(R"({"pipeline": ["classify"]})"), "x"), InputError);
    EXPECT_THROW(parse_scenario(json::parse(R"({"matrix": [[2]], "pipeline": ["verify"],
                                                "verify": [{"check": "homomorphism"}]})"),
                                "x"),
                 InputError);
    EXPECT_THROW(parse_scenario(json::parse(R"({"matrix": [[2]], "construction": {"kind": "nope"}})"), "x"),
                 InputError);
}

TEST(Scenario, HashIgnoresFormatting) {
    auto a = parse_scenario(json::parse(R"({"matrix": [[2]]})"), "x");
    auto b = parse_scenario(json::parse("{ \"matrix\" :\n [ [ 2 ] ] }"), "x");
    auto c = parse_scenario(json::parse(R"({"matrix": [[3]]})"), "x");
    EXPECT_EQ(a.hash, b.hash);
    EXPECT_NE(a.hash, c.hash);
}

TEST(Pipeline, VerdictFailureGivesExitOne) {
    auto s = parse_scenario(json::parse(R"({"matrix": [[2]], "pipeline": ["classify"],
                                            "expect": {"hyperbolic": false}})"),
                            "x");
    auto r = run_scenario(s);
    EXPECT_EQ(r.exit_code, kVerdictFailure);
    EXPECT_EQ(r.report["summary"]["failed"], 1);
}

TEST(Pipeline, PreconditionStopsLaterStages) {
    auto s = parse_scenario(json::parse(R"({"matrix": [[1, -1], [1, 1]],
                                            "verify": [{"check": "relations"}]})"),
                            "x");
    auto r = run_scenario(s);
    EXPECT_EQ(r.exit_code, kPreconditionFailure);
    ASSERT_EQ(r.report["stages"].size(), 2u);
    EXPECT_EQ(r.report["stages"][1]["error"]["type"], "NoPositiveRealEigenvalue");
}

TEST(Pipeline, CombineExitCodes) {
    EXPECT_EQ(combine_exit_codes({0, 1, 3}), 3);
    EXPECT_EQ(combine_exit_codes({3, 2}), 2);
    EXPECT_EQ(combine_exit_codes({0, 0}), 0);
}

TEST(Cli, MalformedRationalIsInputError) {
    auto p = run("classify --matrix '[[\"1/0\"]]'");
    EXPECT_EQ(p.code, 2);
    auto j = json::parse(p.out);
    EXPECT_EQ(j["error"]["type"], "InputError");
    EXPECT_NE(j["error"]["message"].get<std::string>().find("matrix[0][0]"), std::string::npos);
}

TEST(Cli, MissingEigenvalueIsPreconditionFailure) {
    auto p = run("represent --matrix '[[1,-1],[1,1]]'");
    EXPECT_EQ(p.code, 3);
    EXPECT_EQ(json::parse(p.out)["stages"][0]["error"]["type"], "NoPositiveRealEigenvalue");
}

TEST(Cli, CompositionHarness) {
    auto p = run("verify bonatti --trials 1000 --seed 7");
    EXPECT_EQ(p.code, 0);
    auto j = json::parse(p.out);
    auto check = j["stages"][0]["result"]["checks"][0];
    EXPECT_EQ(check["trials"], 1000);
    EXPECT_EQ(check["violations"], 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("run").code, 2);
    EXPECT_EQ(run("--help").code, 0);
    EXPECT_EQ(run("verify no-such-check").code, 2);
}

TEST(Cli, CsvFormat) {
    auto p = run("classify --matrix '[[2,1],[1,1]]' --format csv");
    EXPECT_EQ(p.code, 0);
    EXPECT_EQ(p.out, "scenario,stage,name,value,comparison,tolerance,pass\n");
    auto q = run("verify flow-roots --samples 20 --format csv");
    EXPECT_EQ(q.code, 0);
    EXPECT_NE(q.out.find("flow root q=5 violations,0,==,0,true"), std::string::npos);
}

TEST(Cli, BadScenarioFileIsInputError) {
    auto dir = scratch("bad");
    std::ofstream(dir / "broken.json") << "{\"matrix\": [[2]],";
    auto p = run("run --scenario " + (dir / "broken.json").string());
    EXPECT_EQ(p.code, 2);
    EXPECT_NE(p.out.find("byte"), std::string::npos);
}

TEST(Cli, CorpusRunsAreByteIdentical) {
    auto d1 = scratch("r1"), d2 = scratch("r2");
    auto p1 = run(std::string("run --scenario ") + SOLVACT_CORPUS_DIR + " --seed 11 --out " + d1.string());
    auto p2 = run(std::string("run --scenario ") + SOLVACT_CORPUS_DIR + " --seed 11 --out " + d2.string());
    EXPECT_EQ(p1.code, 0);
    EXPECT_EQ(p1.out, p2.out);
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(d1)) {
        ++n;
        EXPECT_EQ(slurp(e.path()), slurp(d2 / e.path().filename())) << e.path();
    }
    EXPECT_GT(n, 8u);
    EXPECT_TRUE(fs::exists(d1 / "paper-sl4.multipliers.csv"));
    auto reports = json::parse(p1.out);
    ASSERT_TRUE(reports.is_array());
    EXPECT_EQ(reports.size(), 8u);
    EXPECT_EQ(reports[0]["scenario"]["name"], "bs12");  // sorted directory expansion
}
