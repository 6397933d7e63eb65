#pragma once

#include <cstdint>
#include <vector>

namespace casim::rl {

/// Corridor gridworld for the training-time observation-substitution attack.
/// States 0..length-1; action 0 moves left, action 1 moves right; entering
/// state 0 pays -1, entering length-1 pays +1, both end the episode.
struct PolicyInductionConfig {
    int corridor_length = 13;
    int epochs = 40;
    int episodes_per_epoch = 25;
    int episode_step_cap = 60;
    double learning_rate = 0.3;
    double discount = 0.99;
    double exploration_floor = 0.1;
    /// Fraction of the expected total action count over which exploration
    /// anneals from 1.0 to the floor.
    double anneal_fraction = 0.5;
    /// true: per-state budget {s, mirror(s)}; false: {s} only (null attack).
    bool mirror_budget = true;
};

struct PolicyInductionResult {
    /// Greedy action of the phase-1 adversarial table, per state.
    std::vector<int> adversarial_policy;
    std::vector<double> unperturbed_epoch_reward;
    std::vector<double> perturbed_epoch_reward;
    /// Fraction of non-terminal states where the action induced through the
    /// substituted observation equals the adversarial policy.
    double final_agreement = 0.0;
    /// Epochs in the final half where perturbed < unperturbed, and the
    /// window-mean comparison over that half.
    int final_half_epochs_below = 0;
    bool final_half_mean_below = false;
};

/// Two-phase policy induction against a tabular learner. Phase 1 trains an
/// adversarial table on the negated reward. Phase 2 trains twin fresh
/// learners from the same seed, one on true observations and one whose
/// observation stream the adversary rewrites each step: within the budget it
/// shows the state whose greedy action agrees with the adversarial policy
/// (preferring the higher-valued candidate), and when none agrees it shows
/// the higher-valued candidate after adversarially-aligned actions and the
/// lower-valued one otherwise, steering the learner's bootstrapped values
/// toward the adversarial action.
PolicyInductionResult policy_induction_experiment(const PolicyInductionConfig& config,
                                                  std::uint64_t seed);

}  // namespace casim::rl
