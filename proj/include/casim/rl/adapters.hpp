#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "casim/game/formation_game.hpp"
#include "casim/grid/power_grid.hpp"
#include "casim/net/graph.hpp"
#include "casim/rl/surrogate.hpp"

namespace casim::rl {

struct StepResult {
    std::string state_key;
    double reward = 0.0;
    bool terminal = false;
    double impact = 0.0;       // scenario impact metric
    bool objective_met = false;
};

/// The attack loop's view of a target model: observe a discrete state key,
/// act, read scenario metrics. State keys are canonical encodings of the
/// target configuration (sorted failed-line or removed-node sets).
class TargetAdapter {
public:
    virtual ~TargetAdapter() = default;

    virtual void reset() = 0;
    virtual std::string state_key() const = 0;
    virtual int action_count() const = 0;
    /// Actions admissible in the current state.
    virtual std::vector<int> valid_actions() const = 0;
    /// Actions admissible in any state with this key (pure; used by planning).
    virtual std::vector<int> valid_actions_for(const std::string& key) const = 0;
    virtual StepResult step(int action) = 0;
    virtual double impact() const = 0;
    /// Scenario-specific counters for the episode in progress.
    virtual std::map<std::string, double> episode_metrics() const = 0;
    /// Whitebox hook: pure one-step simulation from a state key, when the key
    /// fully determines the configuration. nullopt when unsupported.
    virtual std::optional<SurrogateSample> simulate(const std::string& key,
                                                    int action) const {
        (void)key;
        (void)action;
        return std::nullopt;
    }
};

/// Reward shaping shared by the attack scenarios.
struct RewardWeights {
    double direct_cost = -1.0;      // per attacker action
    double cascade_gain = 1.0;      // per cascaded line failure
    double objective_bonus = 10.0;  // once, on reaching the objective
};

/// Power-grid target: actions trip lines, cascades follow the redistribution
/// rule, the episode ends at collapse (or when no alive line remains).
class GridCascadeAdapter : public TargetAdapter {
public:
    GridCascadeAdapter(grid::PowerGrid pristine, int collapse_threshold,
                       RewardWeights weights);

    void reset() override;
    std::string state_key() const override;
    int action_count() const override;
    std::vector<int> valid_actions() const override;
    std::vector<int> valid_actions_for(const std::string& key) const override;
    StepResult step(int action) override;
    double impact() const override;
    std::map<std::string, double> episode_metrics() const override;
    /// JSON array of the current episode's cascade outcomes, one per trip.
    std::string episode_cascades_json() const;

private:
    grid::PowerGrid pristine_;
    grid::PowerGrid current_;
    int collapse_threshold_;
    RewardWeights weights_;
    std::vector<int> line_ids_;  // action index -> line id
    std::vector<grid::CascadeResult> episode_cascades_;
    int direct_trips_ = 0;
    int cascaded_ = 0;
    bool bonus_paid_ = false;
};

/// Graph target: actions remove nodes, impact is fragmentation. The state
/// key (sorted removed set) fully determines the configuration, so the
/// whitebox simulate() hook is available.
class FragmentationAdapter : public TargetAdapter {
public:
    FragmentationAdapter(net::Graph initial, int removal_budget,
                         double objective_fragmentation, RewardWeights weights);

    void reset() override;
    std::string state_key() const override;
    int action_count() const override;
    std::vector<int> valid_actions() const override;
    std::vector<int> valid_actions_for(const std::string& key) const override;
    StepResult step(int action) override;
    double impact() const override;
    std::map<std::string, double> episode_metrics() const override;
    std::optional<SurrogateSample> simulate(const std::string& key,
                                            int action) const override;

private:
    net::Graph initial_;
    net::Graph current_;
    std::vector<int> node_ids_;  // action index -> node id
    std::vector<int> removed_;
    int removal_budget_;
    double objective_;
    RewardWeights weights_;
    double initial_fragmentation_ = 0.0;
    double fragmentation_ = 0.0;
    bool bonus_paid_ = false;
};

/// Formation-game target: actions remove players; after each removal the
/// remaining players re-settle via best-response dynamics and impact is the
/// fragmentation of the settled graph.
class FormationGameAdapter : public TargetAdapter {
public:
    FormationGameAdapter(game::FormationGame game, net::Graph settled,
                         int removal_budget, double objective_fragmentation,
                         int best_response_rounds, RewardWeights weights);

    void reset() override;
    std::string state_key() const override;
    int action_count() const override;
    std::vector<int> valid_actions() const override;
    std::vector<int> valid_actions_for(const std::string& key) const override;
    StepResult step(int action) override;
    double impact() const override;
    std::map<std::string, double> episode_metrics() const override;
    /// Current play state: the settled link configuration and who can act.
    game::GameState state() const;

private:
    game::FormationGame initial_game_;
    net::Graph initial_graph_;
    std::unique_ptr<game::FormationGame> game_;
    net::Graph graph_;
    std::vector<int> player_ids_;
    std::vector<int> removed_;
    int removal_budget_;
    double objective_;
    int br_rounds_;
    RewardWeights weights_;
    double fragmentation_ = 0.0;
    bool bonus_paid_ = false;
};

/// Canonical key for a sorted id set: comma-joined, "" for the empty set.
std::string id_set_key(const std::vector<int>& sorted_ids);
std::vector<int> parse_id_set_key(const std::string& key);

}  // namespace casim::rl
