#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace casim::scenario {

enum class ScenarioKind {
    GridCascade,
    NetFragmentation,
    FormationDestabilize,
    PolicyInduction,
    DynamicsDemo,
};

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

struct AdversaryConfig {
    double discount = 0.9;
    double learning_rate = 0.1;
    double exploration_initial = 1.0;
    double exploration_anneal = 0.003;
    double exploration_floor = 0.05;
    int planning_episodes = 60;
    int planning_horizon = 40;
    int iteration_cap = 500;
    double objective = 10.0;
    bool warm_start = true;
    bool whitebox = false;
    double direct_cost = -1.0;
    double cascade_gain = 1.0;
    double objective_bonus = 10.0;
};

struct GridConfig {
    double rho = 0.75;  // initial load as a fraction of capacity
    int collapse_threshold = 8;
    std::string bus_file;  // empty: embedded RTS-79
    std::string line_file;
};

struct GraphConfig {
    std::string generator = "barabasi-albert";  // or "erdos-renyi" / "file"
    int nodes = 30;
    int attachment = 2;            // BA attachment count
    double edge_probability = 0.1; // ER edge probability
    std::string edge_list;
    std::string node_attributes;
    int removal_budget = 4;
    double objective_fragmentation = 0.5;
};

struct GameConfig {
    int players = 8;
    std::vector<double> theta{1.0};
    std::string feature_preset = "star";  // or "explicit"
    std::vector<std::vector<double>> features;
    double friends_coeff = 0.0;
    double shock_scale = 0.0;
    std::uint64_t shock_seed = 7;
    int removal_budget = 3;
    double objective_fragmentation = 0.5;
    int max_rounds = 50;
};

struct GridworldConfig {
    int corridor_length = 13;
    int epochs = 40;
    int episodes_per_epoch = 25;
    int episode_step_cap = 60;
    double learning_rate = 0.3;
    double discount = 0.99;
    double exploration_floor = 0.1;
    double anneal_fraction = 0.5;
    std::string budget = "mirror";  // or "self"
};

struct DynamicsConfig {
    std::string system = "double-well";  // or "linear-decay" / "linear-beta"
    int dimension = 1;
    std::vector<std::array<double, 2>> bounds{{-2.0, 2.0}};
    std::vector<int> resolution{81};
    double horizon = 20.0;
    double dt = 0.01;
    double tolerance = 1e-4;
    double state_offset = -1.2;  // demo one-shot state perturbation
    double env_offset = 0.0;     // demo constant environment perturbation
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::GridCascade;
    std::string scenario_id = "grid-cascade";
    std::uint64_t master_seed = 1;
    int repetitions = 100;
    std::string output_dir = "results";
    AdversaryConfig adversary;
    GridConfig grid;
    GraphConfig graph;
    GameConfig game;
    GridworldConfig gridworld;
    DynamicsConfig dynamics;
};

/// Parse and validate a config document (strict: unknown keys rejected with
/// their path, missing files and invalid values reported by field name).
ScenarioConfig parse_config(const std::string& json_text);
/// Load from a file; parse errors carry line and column.
ScenarioConfig load_config(const std::string& path);
/// Canonical JSON echo of a config (used in result summaries).
std::string config_to_json(const ScenarioConfig& config);

}  // namespace casim::scenario
