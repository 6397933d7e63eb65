#pragma once

#include <map>
#include <string>
#include <vector>

#include "casim/metrics/scores.hpp"
#include "casim/rl/attack_loop.hpp"
#include "casim/scenario/config.hpp"

namespace casim::scenario {

struct ExperimentResult {
    ScenarioConfig config;
    std::vector<rl::AttackReport> reports;  // one per repetition, by index
    int successful_repetitions = 0;
    int failed_repetitions = 0;  // repetitions that aborted (INCOMPLETE)
    std::map<std::string, double> aggregates;
    metrics::VulnerabilityScore vulnerability;
    metrics::ResilienceScore resilience;
    double wall_clock_sec = 0.0;
};

/// Run one repetition of the configured scenario with an explicit seed
/// (repetition i of an experiment uses derive_seed(master_seed, i)).
rl::AttackReport run_repetition(const ScenarioConfig& config, std::uint64_t seed);

/// Run all repetitions (optionally on a worker pool; results are assembled
/// by repetition index, so thread count never changes the output) and
/// aggregate.
ExperimentResult run_experiment(const ScenarioConfig& config, int threads = 1);

/// Persist per-repetition reports (rep_NNN.json) and summary.json under dir.
/// Writes are atomic (write-temp-then-rename). Timestamps live only in the
/// summary's "meta" block.
void write_result(const ExperimentResult& result, const std::string& dir);

/// Summary JSON without the meta block (the determinism contract surface).
std::string summary_to_json(const ExperimentResult& result, bool include_meta);

}  // namespace casim::scenario
