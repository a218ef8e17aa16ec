#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nlsob/config.hpp"
#include "nlsob/verify.hpp"

namespace nlsob {

std::string to_json_line(const InequalityReport& r);
void write_summary_csv(std::ostream& os, const std::vector<InequalityReport>& reports);

struct RunResult {
    std::vector<InequalityReport> reports;
    bool all_pass = true;
    std::string refusal;  // set when a theorem hypothesis check refused the input
};

// executes the configured suites; reports come back in a fixed order
RunResult run_suites(const ExperimentConfig& cfg);

// writes reports.jsonl, summary.csv and curves/*.csv under cfg.out
void write_artifacts(const ExperimentConfig& cfg, const RunResult& res);

// human-readable summary of a kernel: p-Levy status, kappa, theta, N-function flags
std::string describe_kernel(const NamedKernel& k);

}  // namespace nlsob
