#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "casim/rl/adapters.hpp"
#include "casim/rl/surrogate.hpp"
#include "casim/rl/tabular_q.hpp"

namespace casim::rl {

/// The decision process the adversary plans over: the action space and
/// discount, plus the per-state action mask and an episode horizon for
/// surrogate rollouts. State encoding and rewards live in the target adapter.
struct AttackMDP {
    int action_count = 0;
    double discount = 0.9;
    int planning_horizon = 40;
    std::function<std::vector<int>(const std::string&)> valid_actions;
};

/// Q-learning entirely inside the surrogate: episodes start from
/// `start_state`, sample transitions from the model, and never touch the
/// real target. Unknown (state, action) pairs end the episode with reward 0,
/// so an empty surrogate returns the table unchanged (pure exploration will
/// follow). Exploration anneals linearly from 1 to 0.1 across the episode
/// budget.
TabularQ plan_on_surrogate(const Surrogate& model, const AttackMDP& mdp,
                           const std::string& start_state, int episodes, Rng& rng,
                           TabularQ q);

struct IterationLog {
    int iteration = 0;
    std::string state;
    int action = 0;
    double reward = 0.0;
    double cumulative_cost = 0.0;
    double impact = 0.0;
};

struct EpisodeSummary {
    int start_iteration = 0;
    int actions = 0;
    double episode_return = 0.0;
    double final_impact = 0.0;
    bool objective_met = false;
    std::map<std::string, double> metrics;
};

struct AttackReport {
    std::string scenario_id;
    std::uint64_t seed = 0;
    std::vector<IterationLog> iterations;
    std::vector<EpisodeSummary> episodes;
    bool success = false;
    std::string termination;  // SUCCESS | CAP_REACHED | INCOMPLETE
    std::map<std::string, int> final_policy;
    std::map<std::string, double> final_metrics;
    std::map<std::string, std::vector<double>> curves;
    /// Scenario-specific JSON payloads (e.g. the closing episode's cascade log).
    std::map<std::string, std::string> attachments;
};

struct AttackLoopConfig {
    double discount = 0.9;
    double learning_rate = 0.1;
    ExplorationSchedule exploration{1.0, 0.0, 0.05};
    int planning_episodes = 60;
    int planning_horizon = 40;
    int iteration_cap = 500;
    double objective = 10.0;
    bool warm_start = true;
    bool whitebox = false;
};

/// The attack simulation loop: starting from the target's initial
/// configuration with zero reward and a random policy, it alternates
/// updating the dynamics estimate from observed history, re-planning on the
/// estimate, and implementing the planned action on the real target, until
/// the episode return reaches the objective or the iteration cap is hit.
/// When the target hits a terminal state short of the objective it is reset
/// and the search continues (best effort). Target failures abort with a
/// partial report marked INCOMPLETE.
AttackReport run_attack_loop(TargetAdapter& target, const AttackLoopConfig& config,
                             std::uint64_t seed, const std::string& scenario_id,
                             TabularQ* learned_q = nullptr);

}  // namespace casim::rl
