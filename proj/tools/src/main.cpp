#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pipeline.hpp"
#include "scenario.hpp"
#include "solvact/errors.hpp"

namespace fs = std::filesystem;
using solvact::cli::json;
using namespace solvact::cli;

namespace {

struct Common {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
};

struct Loaded {
    std::string origin;
    std::optional<Scenario> scenario;
    std::string error;
};

std::vector<std::string> expand(const std::vector<std::string>& paths) {
    std::vector<std::string> files;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<std::string> found;
            for (const auto& e : fs::directory_iterator(p))
                if (e.is_regular_file() && e.path().extension() == ".json") found.push_back(e.path().string());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(p);
        }
    }
    return files;
}

Loaded load(const std::string& path) {
    try {
        return {path, load_scenario(path), {}};
    } catch (const solvact::Error& e) {
        return {path, std::nullopt, e.what()};
    }
}

Loaded from_doc(const json& doc, const std::string& name) {
    try {
        return {name, parse_scenario(doc, name), {}};
    } catch (const solvact::Error& e) {
        return {name, std::nullopt, e.what()};
    }
}

std::optional<json> matrix_arg(const std::string& text, std::string& error) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        error = "--matrix: invalid JSON at byte " + std::to_string(e.byte);
        return std::nullopt;
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw solvact::InputError("cannot write " + path.string());
    os << content;
}

int emit(const std::vector<Loaded>& items, const std::optional<std::vector<std::string>>& stages,
         const Common& common) {
    std::vector<json> reports;
    std::vector<int> codes;
    RunOptions opts{common.seed};
    for (const auto& item : items) {
        RunResult r = !item.scenario ? input_error_report(item.origin, item.error)
                      : stages       ? run_stages(*item.scenario, *stages, opts)
                                     : run_scenario(*item.scenario, opts);
        codes.push_back(r.exit_code);
        if (!common.out.empty()) {
            fs::create_directories(common.out);
            const std::string base =
                item.scenario ? item.scenario->name : fs::path(item.origin).stem().string();
            write_file(fs::path(common.out) / (base + ".report.json"), r.report.dump(2) + "\n");
            for (const auto& [suffix, content] : r.files)
                write_file(fs::path(common.out) / (base + "." + suffix), content);
        }
        reports.push_back(std::move(r.report));
    }
    if (common.format == "csv") {
        std::cout << verdicts_csv(reports);
    } else if (reports.size() == 1) {
        std::cout << reports.front().dump(2) << "\n";
    } else {
        std::cout << json(reports).dump(2) << "\n";
    }
    return combine_exit_codes(codes);
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "override the scenario seed");
    app->add_option("--out", c.out, "directory for reports and CSV files");
    app->add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Actions of Z x|_A Q^d on the line, the interval and the circle", "solvact"};
    app.set_version_flag("--version", std::string(SOLVACT_VERSION));
    app.require_subcommand(1);

    Common common;
    std::string scenario_path;
    std::string matrix_text;
    std::vector<std::string> scenarios;
    std::string check_kind;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> samples;
    std::optional<double> eta;

    auto* classify = app.add_subcommand("classify", "exact spectral classification of A");
    auto* represent = app.add_subcommand("represent", "affine representation and faithfulness certificate");
    auto* construct = app.add_subcommand("construct", "build and audit the scenario's construction");
    auto* verify = app.add_subcommand("verify", "run one verification check");
    auto* run = app.add_subcommand("run", "run the full pipeline of one or more scenarios");

    for (auto* sub : {classify, represent, verify}) {
        auto* s = sub->add_option("--scenario", scenario_path, "scenario file");
        auto* m = sub->add_option("--matrix", matrix_text, "matrix as JSON, e.g. [[2]] or [[2,1],[1,1]]");
        s->excludes(m);
        add_common(sub, common);
    }
    construct->add_option("--scenario", scenario_path, "scenario file")->required();
    add_common(construct, common);
    verify->add_option("kind", check_kind,
                       "homomorphism, faithfulness, relations, multiplier, composition, "
                       "flow-roots, rotation-group, conjugacy, displacement")
        ->required();
    verify->add_option("--trials", trials, "number of random trials");
    verify->add_option("--samples", samples, "samples per flow root");
    verify->add_option("--eta", eta, "slack of the composition estimate");
    run->add_option("--scenario", scenarios, "scenario file or directory (repeatable)")->required();
    add_common(run, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (run->parsed()) {
            std::vector<Loaded> items;
            for (const auto& f : expand(scenarios)) items.push_back(load(f));
            if (items.empty()) {
                std::cerr << "run: no scenario files found\n";
                return kInputError;
            }
            return emit(items, std::nullopt, common);
        }

        if (construct->parsed()) return emit({load(scenario_path)}, std::vector<std::string>{"construct"}, common);

        auto* sub = classify->parsed() ? classify : represent->parsed() ? represent : verify;
        const std::string stage = sub->get_name();

        if (!scenario_path.empty() && stage != "verify")
            return emit({load(scenario_path)}, std::vector<std::string>{stage}, common);

        json doc = json::object();
        if (!scenario_path.empty()) {
            Loaded base = load(scenario_path);
            if (!base.scenario) return emit({base}, std::nullopt, common);
            doc["name"] = base.scenario->name;
            if (base.scenario->matrix) {
                json rows = json::array();
                for (const auto& row : base.scenario->matrix->to_rows()) {
                    json r = json::array();
                    for (const auto& x : row) r.push_back(rational_json(x));
                    rows.push_back(r);
                }
                doc["matrix"] = rows;
            }
            doc["seed"] = base.scenario->seed;
        } else if (!matrix_text.empty()) {
            std::string error;
            auto m = matrix_arg(matrix_text, error);
            if (!m) return emit({Loaded{"--matrix", std::nullopt, error}}, std::nullopt, common);
            doc["matrix"] = *m;
        } else if (stage != "verify") {
            std::cerr << stage << ": one of --scenario or --matrix is required\n";
            return kInputError;
        }

        if (stage != "verify") {
            doc["name"] = stage;
            doc["pipeline"] = json::array({stage});
            return emit({from_doc(doc, stage)}, std::nullopt, common);
        }

        const std::string kind = check_kind == "bonatti" ? "composition" : check_kind;
        json c = {{"check", kind}};
        if (trials) c["trials"] = *trials;
        if (samples) c["samples"] = *samples;
        if (eta) doc["tolerances"] = {{"eta", *eta}};
        if (!doc.contains("name")) doc["name"] = "verify-" + kind;
        const bool needs_rep =
            kind == "homomorphism" || kind == "faithfulness" || kind == "multiplier" || kind == "conjugacy";
        doc["pipeline"] = needs_rep ? json::array({"represent", "verify"}) : json::array({"verify"});
        doc["verify"] = json::array({c});
        return emit({from_doc(doc, doc["name"].get<std::string>())}, std::nullopt, common);
    } catch (const solvact::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
