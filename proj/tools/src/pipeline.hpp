#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "scenario.hpp"

namespace solvact::cli {

enum ExitCode : int { kPass = 0, kVerdictFailure = 1, kInputError = 2, kPreconditionFailure = 3 };

struct RunOptions {
    std::optional<std::uint64_t> seed;  ///< overrides the scenario seed
};

struct RunResult {
    json report;
    int exit_code = kPass;
    /// Extra outputs as (file suffix, content), e.g. ("multipliers.csv", ...).
    std::vector<std::pair<std::string, std::string>> files;
};

/// Executes the scenario's pipeline in order. A stage that raises stops the
/// run; the stages before it stay in the report.
RunResult run_scenario(const Scenario& scenario, const RunOptions& opts = {});

/// Same, restricted to the listed stages (kept in pipeline order).
RunResult run_stages(const Scenario& scenario, const std::vector<std::string>& stages,
                     const RunOptions& opts = {});

/// Report for an input error that happened before any stage ran.
RunResult input_error_report(const std::string& origin, const std::string& message);

/// scenario,stage,name,value,comparison,tolerance,pass
std::string verdicts_csv(const std::vector<json>& reports);

/// Exit code of several runs: input errors first, then precondition failures,
/// then verdict failures.
int combine_exit_codes(const std::vector<int>& codes);

}  // namespace solvact::cli
