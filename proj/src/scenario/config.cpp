#include "casim/scenario/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "casim/common/errors.hpp"

namespace casim::scenario {

using nlohmann::json;

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::GridCascade: return "grid-cascade";
        case ScenarioKind::NetFragmentation: return "net-fragmentation";
        case ScenarioKind::FormationDestabilize: return "formation-destabilize";
        case ScenarioKind::PolicyInduction: return "policy-induction";
        case ScenarioKind::DynamicsDemo: return "dynamics-demo";
    }
    return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
    if (name == "grid-cascade") return ScenarioKind::GridCascade;
    if (name == "net-fragmentation") return ScenarioKind::NetFragmentation;
    if (name == "formation-destabilize") return ScenarioKind::FormationDestabilize;
    if (name == "policy-induction") return ScenarioKind::PolicyInduction;
    if (name == "dynamics-demo") return ScenarioKind::DynamicsDemo;
    throw ConfigError("unknown scenario kind: '" + name + "'");
}

namespace {

void reject_unknown(const json& node, const std::set<std::string>& known,
                    const std::string& where) {
    for (const auto& [key, value] : node.items()) {
        if (!known.count(key)) {
            throw ConfigError("unknown key '" + key + "' in " + where +
                              " (strict mode)");
        }
    }
}

template <typename T>
void read(const json& node, const char* key, T& out) {
    if (node.contains(key)) out = node.at(key).get<T>();
}

void require_file(const std::string& path, const std::string& field) {
    if (path.empty()) return;
    if (!std::filesystem::exists(path)) {
        throw ConfigError("field '" + field + "': file does not exist: " + path);
    }
}

void parse_adversary(const json& node, AdversaryConfig& a) {
    reject_unknown(node,
                   {"discount", "learning_rate", "exploration_initial",
                    "exploration_anneal", "exploration_floor", "planning_episodes",
                    "planning_horizon", "iteration_cap", "objective", "warm_start",
                    "whitebox", "direct_cost", "cascade_gain", "objective_bonus"},
                   "adversary");
    read(node, "discount", a.discount);
    read(node, "learning_rate", a.learning_rate);
    read(node, "exploration_initial", a.exploration_initial);
    read(node, "exploration_anneal", a.exploration_anneal);
    read(node, "exploration_floor", a.exploration_floor);
    read(node, "planning_episodes", a.planning_episodes);
    read(node, "planning_horizon", a.planning_horizon);
    read(node, "iteration_cap", a.iteration_cap);
    read(node, "objective", a.objective);
    read(node, "warm_start", a.warm_start);
    read(node, "whitebox", a.whitebox);
    read(node, "direct_cost", a.direct_cost);
    read(node, "cascade_gain", a.cascade_gain);
    read(node, "objective_bonus", a.objective_bonus);
    if (!(a.discount >= 0.0 && a.discount < 1.0)) {
        throw ConfigError("field 'adversary.discount' must be in [0, 1)");
    }
    if (!(a.learning_rate > 0.0 && a.learning_rate <= 1.0)) {
        throw ConfigError("field 'adversary.learning_rate' must be in (0, 1]");
    }
    if (a.iteration_cap < 1) throw ConfigError("field 'adversary.iteration_cap' must be >= 1");
    if (a.planning_episodes < 1) {
        throw ConfigError("field 'adversary.planning_episodes' must be >= 1");
    }
    if (!std::isfinite(a.objective)) {
        throw ConfigError("field 'adversary.objective' must be finite");
    }
}

void parse_grid(const json& node, GridConfig& g) {
    reject_unknown(node, {"rho", "collapse_threshold", "bus_file", "line_file"}, "grid");
    read(node, "rho", g.rho);
    read(node, "collapse_threshold", g.collapse_threshold);
    read(node, "bus_file", g.bus_file);
    read(node, "line_file", g.line_file);
    if (g.rho < 0.0 || g.rho >= 1.0) {
        throw ConfigError("field 'grid.rho' must be in [0, 1)");
    }
    if (g.collapse_threshold < 1) {
        throw ConfigError("field 'grid.collapse_threshold' must be >= 1");
    }
    require_file(g.bus_file, "grid.bus_file");
    require_file(g.line_file, "grid.line_file");
}

void parse_graph(const json& node, GraphConfig& g) {
    reject_unknown(node,
                   {"generator", "nodes", "attachment", "edge_probability",
                    "edge_list", "node_attributes", "removal_budget",
                    "objective_fragmentation"},
                   "graph");
    read(node, "generator", g.generator);
    read(node, "nodes", g.nodes);
    read(node, "attachment", g.attachment);
    read(node, "edge_probability", g.edge_probability);
    read(node, "edge_list", g.edge_list);
    read(node, "node_attributes", g.node_attributes);
    read(node, "removal_budget", g.removal_budget);
    read(node, "objective_fragmentation", g.objective_fragmentation);
    if (g.generator != "barabasi-albert" && g.generator != "erdos-renyi" &&
        g.generator != "file") {
        throw ConfigError("field 'graph.generator' must be barabasi-albert, erdos-renyi or file");
    }
    if (g.generator == "file" && g.edge_list.empty()) {
        throw ConfigError("field 'graph.edge_list' required for generator 'file'");
    }
    if (g.removal_budget < 1) throw ConfigError("field 'graph.removal_budget' must be >= 1");
    require_file(g.edge_list, "graph.edge_list");
    require_file(g.node_attributes, "graph.node_attributes");
}

void parse_game(const json& node, GameConfig& g) {
    reject_unknown(node,
                   {"players", "theta", "feature_preset", "features", "friends_coeff",
                    "shock_scale", "shock_seed", "removal_budget",
                    "objective_fragmentation", "max_rounds"},
                   "game");
    read(node, "players", g.players);
    read(node, "theta", g.theta);
    read(node, "feature_preset", g.feature_preset);
    read(node, "features", g.features);
    read(node, "friends_coeff", g.friends_coeff);
    read(node, "shock_scale", g.shock_scale);
    read(node, "shock_seed", g.shock_seed);
    read(node, "removal_budget", g.removal_budget);
    read(node, "objective_fragmentation", g.objective_fragmentation);
    read(node, "max_rounds", g.max_rounds);
    if (g.players < 2) throw ConfigError("field 'game.players' must be >= 2");
    if (g.feature_preset != "star" && g.feature_preset != "explicit") {
        throw ConfigError("field 'game.feature_preset' must be star or explicit");
    }
    if (g.feature_preset == "explicit" &&
        static_cast<int>(g.features.size()) != g.players) {
        throw ConfigError("field 'game.features' must list one vector per player");
    }
}

void parse_gridworld(const json& node, GridworldConfig& g) {
    reject_unknown(node,
                   {"corridor_length", "epochs", "episodes_per_epoch",
                    "episode_step_cap", "learning_rate", "discount",
                    "exploration_floor", "anneal_fraction", "budget"},
                   "gridworld");
    read(node, "corridor_length", g.corridor_length);
    read(node, "epochs", g.epochs);
    read(node, "episodes_per_epoch", g.episodes_per_epoch);
    read(node, "episode_step_cap", g.episode_step_cap);
    read(node, "learning_rate", g.learning_rate);
    read(node, "discount", g.discount);
    read(node, "exploration_floor", g.exploration_floor);
    read(node, "anneal_fraction", g.anneal_fraction);
    read(node, "budget", g.budget);
    if (g.budget != "mirror" && g.budget != "self") {
        throw ConfigError("field 'gridworld.budget' must be mirror or self");
    }
    if (g.corridor_length < 5 || g.corridor_length > 100) {
        throw ConfigError("field 'gridworld.corridor_length' must be in [5, 100]");
    }
}

void parse_dynamics(const json& node, DynamicsConfig& d) {
    reject_unknown(node,
                   {"system", "dimension", "bounds", "resolution", "horizon", "dt",
                    "tolerance", "state_offset", "env_offset"},
                   "dynamics");
    read(node, "system", d.system);
    read(node, "dimension", d.dimension);
    if (node.contains("bounds")) {
        d.bounds.clear();
        for (const auto& pair : node.at("bounds")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw ConfigError("field 'dynamics.bounds' entries must be [lo, hi]");
            }
            d.bounds.push_back({pair[0].get<double>(), pair[1].get<double>()});
        }
    }
    read(node, "resolution", d.resolution);
    read(node, "horizon", d.horizon);
    read(node, "dt", d.dt);
    read(node, "tolerance", d.tolerance);
    read(node, "state_offset", d.state_offset);
    read(node, "env_offset", d.env_offset);
    if (d.system != "double-well" && d.system != "linear-decay" &&
        d.system != "linear-beta") {
        throw ConfigError(
            "field 'dynamics.system' must be double-well, linear-decay or linear-beta");
    }
    if (d.dimension < 1 || d.dimension > 3) {
        throw ConfigError("field 'dynamics.dimension' must be in [1, 3]");
    }
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // byte offset -> line/column
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < json_text.size(); ++i) {
            if (json_text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ConfigError("parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(doc,
                   {"scenario", "master_seed", "repetitions", "output_dir", "adversary",
                    "grid", "graph", "game", "gridworld", "dynamics"},
                   "config root");
    if (!doc.contains("scenario")) throw ConfigError("field 'scenario' is required");

    ScenarioConfig cfg;
    cfg.scenario_id = doc.at("scenario").get<std::string>();
    cfg.kind = scenario_kind_from_string(cfg.scenario_id);
    read(doc, "master_seed", cfg.master_seed);
    read(doc, "repetitions", cfg.repetitions);
    read(doc, "output_dir", cfg.output_dir);
    if (cfg.repetitions < 1) throw ConfigError("field 'repetitions' must be >= 1");

    if (doc.contains("adversary")) parse_adversary(doc.at("adversary"), cfg.adversary);
    if (doc.contains("grid")) parse_grid(doc.at("grid"), cfg.grid);
    if (doc.contains("graph")) parse_graph(doc.at("graph"), cfg.graph);
    if (doc.contains("game")) parse_game(doc.at("game"), cfg.game);
    if (doc.contains("gridworld")) parse_gridworld(doc.at("gridworld"), cfg.gridworld);
    if (doc.contains("dynamics")) parse_dynamics(doc.at("dynamics"), cfg.dynamics);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ScenarioConfig& c) {
    json doc;
    doc["scenario"] = c.scenario_id;
    doc["master_seed"] = c.master_seed;
    doc["repetitions"] = c.repetitions;
    doc["output_dir"] = c.output_dir;
    doc["adversary"] = {{"discount", c.adversary.discount},
                        {"learning_rate", c.adversary.learning_rate},
                        {"exploration_initial", c.adversary.exploration_initial},
                        {"exploration_anneal", c.adversary.exploration_anneal},
                        {"exploration_floor", c.adversary.exploration_floor},
                        {"planning_episodes", c.adversary.planning_episodes},
                        {"planning_horizon", c.adversary.planning_horizon},
                        {"iteration_cap", c.adversary.iteration_cap},
                        {"objective", c.adversary.objective},
                        {"warm_start", c.adversary.warm_start},
                        {"whitebox", c.adversary.whitebox},
                        {"direct_cost", c.adversary.direct_cost},
                        {"cascade_gain", c.adversary.cascade_gain},
                        {"objective_bonus", c.adversary.objective_bonus}};
    switch (c.kind) {
        case ScenarioKind::GridCascade:
            doc["grid"] = {{"rho", c.grid.rho},
                           {"collapse_threshold", c.grid.collapse_threshold},
                           {"bus_file", c.grid.bus_file},
                           {"line_file", c.grid.line_file}};
            break;
        case ScenarioKind::NetFragmentation:
            doc["graph"] = {{"generator", c.graph.generator},
                            {"nodes", c.graph.nodes},
                            {"attachment", c.graph.attachment},
                            {"edge_probability", c.graph.edge_probability},
                            {"edge_list", c.graph.edge_list},
                            {"node_attributes", c.graph.node_attributes},
                            {"removal_budget", c.graph.removal_budget},
                            {"objective_fragmentation", c.graph.objective_fragmentation}};
            break;
        case ScenarioKind::FormationDestabilize:
            doc["game"] = {{"players", c.game.players},
                           {"theta", c.game.theta},
                           {"feature_preset", c.game.feature_preset},
                           {"features", c.game.features},
                           {"friends_coeff", c.game.friends_coeff},
                           {"shock_scale", c.game.shock_scale},
                           {"shock_seed", c.game.shock_seed},
                           {"removal_budget", c.game.removal_budget},
                           {"objective_fragmentation", c.game.objective_fragmentation},
                           {"max_rounds", c.game.max_rounds}};
            break;
        case ScenarioKind::PolicyInduction:
            doc["gridworld"] = {{"corridor_length", c.gridworld.corridor_length},
                                {"epochs", c.gridworld.epochs},
                                {"episodes_per_epoch", c.gridworld.episodes_per_epoch},
                                {"episode_step_cap", c.gridworld.episode_step_cap},
                                {"learning_rate", c.gridworld.learning_rate},
                                {"discount", c.gridworld.discount},
                                {"exploration_floor", c.gridworld.exploration_floor},
                                {"anneal_fraction", c.gridworld.anneal_fraction},
                                {"budget", c.gridworld.budget}};
            break;
        case ScenarioKind::DynamicsDemo: {
            json bounds = json::array();
            for (const auto& b : c.dynamics.bounds) bounds.push_back({b[0], b[1]});
            doc["dynamics"] = {{"system", c.dynamics.system},
                               {"dimension", c.dynamics.dimension},
                               {"bounds", bounds},
                               {"resolution", c.dynamics.resolution},
                               {"horizon", c.dynamics.horizon},
                               {"dt", c.dynamics.dt},
                               {"tolerance", c.dynamics.tolerance},
                               {"state_offset", c.dynamics.state_offset},
                               {"env_offset", c.dynamics.env_offset}};
            break;
        }
    }
    return doc.dump(2);
}

}  // namespace casim::scenario
