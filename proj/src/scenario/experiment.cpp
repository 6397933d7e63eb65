#include "casim/scenario/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "casim/common/errors.hpp"
#include "casim/common/rng.hpp"
#include "casim/dynamics/basins.hpp"
#include "casim/dynamics/flow.hpp"
#include "casim/game/stability.hpp"
#include "casim/net/generators.hpp"
#include "casim/net/metrics.hpp"
#include "casim/rl/policy_induction.hpp"
#include "casim/rl/report_json.hpp"

namespace casim::scenario {

namespace {

rl::RewardWeights weights_of(const AdversaryConfig& a) {
    return {a.direct_cost, a.cascade_gain, a.objective_bonus};
}

rl::AttackLoopConfig loop_config_of(const AdversaryConfig& a) {
    rl::AttackLoopConfig cfg;
    cfg.discount = a.discount;
    cfg.learning_rate = a.learning_rate;
    cfg.exploration = {a.exploration_initial, a.exploration_anneal, a.exploration_floor};
    cfg.planning_episodes = a.planning_episodes;
    cfg.planning_horizon = a.planning_horizon;
    cfg.iteration_cap = a.iteration_cap;
    cfg.objective = a.objective;
    cfg.warm_start = a.warm_start;
    cfg.whitebox = a.whitebox;
    return cfg;
}

/// Best successful episode = fewest attacker actions; ties by earliest.
const rl::EpisodeSummary* best_successful_episode(const rl::AttackReport& report) {
    const rl::EpisodeSummary* best = nullptr;
    for (const auto& ep : report.episodes) {
        if (!ep.objective_met) continue;
        if (!best || ep.actions < best->actions) best = &ep;
    }
    return best;
}

// ---------------------------------------------------------------------------
// grid-cascade

rl::AttackReport run_grid_repetition(const ScenarioConfig& cfg, std::uint64_t seed) {
    grid::PowerGrid pristine =
        cfg.grid.bus_file.empty()
            ? grid::load_rts79(cfg.grid.rho)
            : grid::PowerGrid::from_csv_files(cfg.grid.bus_file, cfg.grid.line_file,
                                              cfg.grid.rho);
    rl::GridCascadeAdapter target(std::move(pristine), cfg.grid.collapse_threshold,
                                  weights_of(cfg.adversary));
    rl::AttackReport report =
        rl::run_attack_loop(target, loop_config_of(cfg.adversary), seed, cfg.scenario_id);
    report.attachments["closing_episode_cascades"] = target.episode_cascades_json();

    if (const auto* best = best_successful_episode(report)) {
        report.final_metrics["best_direct_trips"] = best->metrics.at("direct_trips");
        report.final_metrics["best_cascaded_failures"] =
            best->metrics.at("cascaded_failures");
        report.final_metrics["best_total_failures"] = best->metrics.at("total_failures");
        // cumulative cascaded count after each direct trip of the best episode
        std::vector<double> cascaded_by_trip;
        for (int k = 0; k < best->actions; ++k) {
            const auto& it =
                report.iterations[static_cast<std::size_t>(best->start_iteration + k)];
            cascaded_by_trip.push_back(it.impact - static_cast<double>(k + 1));
        }
        report.curves["cascaded_by_trip"] = std::move(cascaded_by_trip);
    }
    return report;
}

// ---------------------------------------------------------------------------
// net-fragmentation

net::Graph build_graph(const GraphConfig& g, std::uint64_t seed) {
    if (g.generator == "file") {
        net::Graph graph = net::read_edge_list_file(g.edge_list);
        if (!g.node_attributes.empty()) {
            net::read_node_attributes_file(graph, g.node_attributes);
        }
        return graph;
    }
    Rng rng(seed);
    if (g.generator == "barabasi-albert") {
        return net::barabasi_albert(g.nodes, g.attachment, rng);
    }
    return net::erdos_renyi(g.nodes, g.edge_probability, rng);
}

/// Follow a ranking baseline: remove the current top-ranked node, re-ranking
/// after every removal; record fragmentation and clustering per step.
void baseline_curves(const net::Graph& start, int budget,
                     const std::function<std::vector<int>(const net::Graph&)>& ranking,
                     std::vector<double>& frag_curve, std::vector<double>& clus_curve) {
    net::Graph g = start;
    for (int k = 0; k < budget && g.node_count() > 2; ++k) {
        const int victim = ranking(g).front();
        g = g.without_node(victim);
        frag_curve.push_back(net::fragmentation(g));
        clus_curve.push_back(net::global_clustering(g));
    }
}

rl::AttackReport run_fragmentation_repetition(const ScenarioConfig& cfg,
                                              std::uint64_t seed) {
    const net::Graph graph = build_graph(cfg.graph, derive_seed(seed, 101));
    rl::FragmentationAdapter target(graph, cfg.graph.removal_budget,
                                    cfg.graph.objective_fragmentation,
                                    weights_of(cfg.adversary));
    rl::TabularQ learned(target.action_count(), cfg.adversary.learning_rate,
                         cfg.adversary.discount);
    rl::AttackReport report = rl::run_attack_loop(target, loop_config_of(cfg.adversary),
                                                  seed, cfg.scenario_id, &learned);

    // Greedy rollout of the learned table against a fresh copy.
    {
        rl::FragmentationAdapter probe(graph, cfg.graph.removal_budget,
                                       cfg.graph.objective_fragmentation,
                                       weights_of(cfg.adversary));
        std::vector<double> frag_curve;
        std::vector<double> clus_curve;
        net::Graph current = graph;
        probe.reset();
        for (int k = 0; k < cfg.graph.removal_budget; ++k) {
            const auto valid = probe.valid_actions();
            if (valid.empty()) break;
            const int action = learned.greedy_masked(probe.state_key(), valid);
            auto res = probe.step(action);
            const int node = graph.nodes()[static_cast<std::size_t>(action)];
            current = current.without_node(node);
            frag_curve.push_back(res.impact);
            clus_curve.push_back(net::global_clustering(current));
        }
        report.curves["rl_fragmentation"] = frag_curve;
        report.curves["rl_clustering"] = clus_curve;
        if (!frag_curve.empty()) {
            report.final_metrics["greedy_final_fragmentation"] = frag_curve.back();
        }
    }

    std::vector<double> bw_frag, bw_clus, br_frag, br_clus;
    baseline_curves(graph, cfg.graph.removal_budget, net::betweenness_ranking, bw_frag,
                    bw_clus);
    baseline_curves(graph, cfg.graph.removal_budget, net::brokerage_ranking, br_frag,
                    br_clus);
    report.curves["betweenness_fragmentation"] = bw_frag;
    report.curves["betweenness_clustering"] = bw_clus;
    report.curves["brokerage_fragmentation"] = br_frag;
    report.curves["brokerage_clustering"] = br_clus;
    return report;
}

// ---------------------------------------------------------------------------
// formation-destabilize

game::FormationGame build_game(const GameConfig& g) {
    game::FormationGameConfig config;
    config.players = g.players;
    config.theta = g.theta;
    config.friends_coeff = g.friends_coeff;
    config.shock_scale = g.shock_scale;
    config.shock_seed = g.shock_seed;
    if (g.feature_preset == "explicit") {
        config.features = g.features;
    } else {
        // star: player 0 is the hub (feature 1), the rest are leaves at 0;
        // homophily then values hub-leaf links and nothing else
        const std::size_t dim = g.theta.size();
        config.features.assign(static_cast<std::size_t>(g.players),
                               std::vector<double>(dim, 0.0));
        config.features[0].assign(dim, 1.0);
    }
    return game::FormationGame(config);
}

rl::AttackReport run_formation_repetition(const ScenarioConfig& cfg, std::uint64_t seed) {
    game::FormationGame game = build_game(cfg.game);
    auto [settled, converged] =
        game::best_response_dynamics(game, game.empty_graph(), cfg.game.max_rounds);
    rl::FormationGameAdapter target(game, settled, cfg.game.removal_budget,
                                    cfg.game.objective_fragmentation,
                                    cfg.game.max_rounds, weights_of(cfg.adversary));
    rl::AttackReport report =
        rl::run_attack_loop(target, loop_config_of(cfg.adversary), seed, cfg.scenario_id);
    report.final_metrics["initial_converged"] = converged ? 1.0 : 0.0;
    report.final_metrics["initial_fragmentation"] = net::fragmentation(settled);
    if (const auto* best = best_successful_episode(report)) {
        std::vector<double> impact_by_removal;
        for (int k = 0; k < best->actions; ++k) {
            impact_by_removal.push_back(
                report.iterations[static_cast<std::size_t>(best->start_iteration + k)]
                    .impact);
        }
        report.curves["impact_by_removal"] = std::move(impact_by_removal);
    }
    return report;
}

// ---------------------------------------------------------------------------
// policy-induction

rl::AttackReport run_policy_induction_repetition(const ScenarioConfig& cfg,
                                                 std::uint64_t seed) {
    rl::PolicyInductionConfig pic;
    pic.corridor_length = cfg.gridworld.corridor_length;
    pic.epochs = cfg.gridworld.epochs;
    pic.episodes_per_epoch = cfg.gridworld.episodes_per_epoch;
    pic.episode_step_cap = cfg.gridworld.episode_step_cap;
    pic.learning_rate = cfg.gridworld.learning_rate;
    pic.discount = cfg.gridworld.discount;
    pic.exploration_floor = cfg.gridworld.exploration_floor;
    pic.anneal_fraction = cfg.gridworld.anneal_fraction;
    pic.mirror_budget = cfg.gridworld.budget == "mirror";

    auto res = rl::policy_induction_experiment(pic, seed);

    rl::AttackReport report;
    report.scenario_id = cfg.scenario_id;
    report.seed = seed;
    report.curves["unperturbed_reward"] = res.unperturbed_epoch_reward;
    report.curves["perturbed_reward"] = res.perturbed_epoch_reward;
    report.final_metrics["final_agreement"] = res.final_agreement;
    report.final_metrics["final_half_epochs_below"] =
        static_cast<double>(res.final_half_epochs_below);
    report.final_metrics["final_half_mean_below"] = res.final_half_mean_below ? 1.0 : 0.0;

    // epochs before the perturbed curve diverges below and stays below
    int divergence = pic.epochs;
    for (int e = pic.epochs - 1; e >= 0; --e) {
        if (res.perturbed_epoch_reward[static_cast<std::size_t>(e)] >=
            res.unperturbed_epoch_reward[static_cast<std::size_t>(e)]) {
            break;
        }
        divergence = e;
    }
    report.success = res.final_half_mean_below;
    report.termination = report.success ? "SUCCESS" : "CAP_REACHED";
    if (report.success) {
        report.final_metrics["epochs_to_divergence"] =
            static_cast<double>(std::max(1, divergence));
    }
    return report;
}

// ---------------------------------------------------------------------------
// dynamics-demo

dynamics::DynamicalSystem build_system(const DynamicsConfig& d) {
    const int n = d.dimension;
    if (d.system == "linear-decay") {
        return dynamics::DynamicalSystem(
            n, [](const dynamics::State& x, double, dynamics::State& dx) {
                for (std::size_t i = 0; i < x.size(); ++i) dx[i] = -x[i];
            });
    }
    if (d.system == "linear-beta") {
        return dynamics::DynamicalSystem(
            n, [](const dynamics::State& x, double beta, dynamics::State& dx) {
                for (std::size_t i = 0; i < x.size(); ++i) dx[i] = -x[i] + beta;
            });
    }
    return dynamics::DynamicalSystem(
        n, [](const dynamics::State& x, double beta, dynamics::State& dx) {
            for (std::size_t i = 0; i < x.size(); ++i) {
                dx[i] = x[i] - x[i] * x[i] * x[i] + beta;
            }
        });
}

rl::AttackReport run_dynamics_demo_repetition(const ScenarioConfig& cfg,
                                              std::uint64_t seed) {
    const auto& d = cfg.dynamics;
    dynamics::DynamicalSystem system = build_system(d);

    std::vector<std::array<double, 2>> bounds = d.bounds;
    std::vector<int> resolution = d.resolution;
    while (static_cast<int>(bounds.size()) < d.dimension) bounds.push_back(bounds.back());
    while (static_cast<int>(resolution.size()) < d.dimension) {
        resolution.push_back(resolution.back());
    }
    auto basins = dynamics::estimate_basins(system, bounds, resolution, d.horizon,
                                            d.tolerance, d.dt);

    rl::AttackReport report;
    report.scenario_id = cfg.scenario_id;
    report.seed = seed;
    report.final_metrics["attractors"] = static_cast<double>(basins.attractors.size());
    report.final_metrics["boundary_cells"] =
        static_cast<double>(basins.boundary_cells.size());
    std::vector<double> labels(basins.labels.begin(), basins.labels.end());
    report.curves["basin_labels"] = std::move(labels);

    // A state-perturbation demo: one-shot offset at t = 0 versus the plain
    // flow, reporting the trajectory deviation.
    Rng rng(seed);
    dynamics::State x0(static_cast<std::size_t>(d.dimension));
    for (auto& v : x0) v = rng.uniform(bounds[0][0] * 0.25, bounds[0][1] * 0.25);
    auto plain = dynamics::integrate_flow(system, x0, d.horizon, d.dt);
    dynamics::StatePerturbation pert;
    const double offset = d.state_offset;
    pert.gamma = [offset](const dynamics::State& x) {
        return dynamics::State(x.size(), offset);
    };
    pert.steps = std::set<long long>{0};
    auto shifted = dynamics::apply_state_perturbation(system, x0, pert, d.horizon, d.dt);
    report.final_metrics["trajectory_deviation"] =
        dynamics::trajectory_deviation(plain, shifted);
    std::vector<double> plain_curve, shifted_curve;
    for (const auto& s : plain.states) plain_curve.push_back(s[0]);
    for (const auto& s : shifted.states) shifted_curve.push_back(s[0]);
    report.curves["trajectory_x0"] = std::move(plain_curve);
    report.curves["perturbed_trajectory_x0"] = std::move(shifted_curve);
    report.success = true;
    report.termination = "SUCCESS";
    return report;
}

std::string cost_unit_of(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::GridCascade: return "direct line trips";
        case ScenarioKind::NetFragmentation:
        case ScenarioKind::FormationDestabilize: return "nodes removed";
        case ScenarioKind::PolicyInduction: return "epochs";
        case ScenarioKind::DynamicsDemo: return "n/a";
    }
    return "n/a";
}

/// Per-repetition cost for the vulnerability score, when the attack
/// succeeded.
std::optional<double> successful_cost(ScenarioKind kind, const rl::AttackReport& r) {
    switch (kind) {
        case ScenarioKind::GridCascade: {
            auto it = r.final_metrics.find("best_direct_trips");
            if (it == r.final_metrics.end()) return std::nullopt;
            return it->second;
        }
        case ScenarioKind::NetFragmentation:
        case ScenarioKind::FormationDestabilize: {
            const rl::EpisodeSummary* best = best_successful_episode(r);
            if (!best) return std::nullopt;
            return static_cast<double>(best->actions);
        }
        case ScenarioKind::PolicyInduction: {
            auto it = r.final_metrics.find("epochs_to_divergence");
            if (it == r.final_metrics.end()) return std::nullopt;
            return it->second;
        }
        case ScenarioKind::DynamicsDemo: return std::nullopt;
    }
    return std::nullopt;
}

void aggregate(ExperimentResult& result) {
    const ScenarioKind kind = result.config.kind;
    std::vector<metrics::AttackOutcome> outcomes;
    double impact_sum = 0.0, impact_min = 0.0, impact_max = 0.0;
    double cost_sum = 0.0;
    int impact_count = 0;

    for (const auto& report : result.reports) {
        if (report.termination == "INCOMPLETE") {
            ++result.failed_repetitions;
            continue;
        }
        double peak_impact = 0.0;
        for (const auto& it : report.iterations) {
            peak_impact = std::max(peak_impact, it.impact);
        }
        if (kind == ScenarioKind::DynamicsDemo) {
            peak_impact = report.final_metrics.count("attractors")
                              ? report.final_metrics.at("attractors")
                              : 0.0;
        }
        if (impact_count == 0) {
            impact_min = impact_max = peak_impact;
        } else {
            impact_min = std::min(impact_min, peak_impact);
            impact_max = std::max(impact_max, peak_impact);
        }
        impact_sum += peak_impact;
        ++impact_count;

        auto cost = successful_cost(kind, report);
        if (cost.has_value()) {
            ++result.successful_repetitions;
            cost_sum += *cost;
            outcomes.emplace_back(*cost, peak_impact, true, cost_unit_of(kind));
        } else if (kind == ScenarioKind::DynamicsDemo && report.success) {
            ++result.successful_repetitions;  // demo has no attack-cost notion
        }
    }
    if (impact_count > 0) {
        result.aggregates["impact_mean"] = impact_sum / impact_count;
        result.aggregates["impact_min"] = impact_min;
        result.aggregates["impact_max"] = impact_max;
    }
    result.aggregates["success_rate"] =
        result.reports.empty()
            ? 0.0
            : static_cast<double>(result.successful_repetitions) / result.reports.size();
    if (result.successful_repetitions > 0) {
        result.aggregates["cost_mean"] = cost_sum / result.successful_repetitions;
    }

    if (kind == ScenarioKind::GridCascade) {
        double trips = 0.0, cascaded = 0.0, total = 0.0;
        int n = 0;
        for (const auto& report : result.reports) {
            auto it = report.final_metrics.find("best_direct_trips");
            if (it == report.final_metrics.end()) continue;
            trips += it->second;
            cascaded += report.final_metrics.at("best_cascaded_failures");
            total += report.final_metrics.at("best_total_failures");
            ++n;
        }
        if (n > 0) {
            result.aggregates["mean_direct_trips"] = trips / n;
            result.aggregates["mean_cascaded_failures"] = cascaded / n;
            result.aggregates["mean_total_failures"] = total / n;
        }
    }
    if (kind == ScenarioKind::PolicyInduction) {
        double agree = 0.0;
        int below = 0;
        int counted2 = 0;
        for (const auto& report : result.reports) {
            auto it = report.final_metrics.find("final_agreement");
            if (it == report.final_metrics.end()) continue;
            agree += it->second;
            below += report.final_metrics.at("final_half_mean_below") > 0.5 ? 1 : 0;
            ++counted2;
        }
        if (counted2 > 0) {
            result.aggregates["mean_final_agreement"] = agree / counted2;
            result.aggregates["reward_below_fraction"] =
                static_cast<double>(below) / counted2;
        }
    }

    result.vulnerability = metrics::vulnerability(outcomes);
    result.resilience = metrics::resilience(outcomes);
}

}  // namespace

rl::AttackReport run_repetition(const ScenarioConfig& config, std::uint64_t seed) {
    switch (config.kind) {
        case ScenarioKind::GridCascade: return run_grid_repetition(config, seed);
        case ScenarioKind::NetFragmentation:
            return run_fragmentation_repetition(config, seed);
        case ScenarioKind::FormationDestabilize:
            return run_formation_repetition(config, seed);
        case ScenarioKind::PolicyInduction:
            return run_policy_induction_repetition(config, seed);
        case ScenarioKind::DynamicsDemo:
            return run_dynamics_demo_repetition(config, seed);
    }
    throw Error("unreachable scenario kind");
}

ExperimentResult run_experiment(const ScenarioConfig& config, int threads) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentResult result;
    result.config = config;
    result.reports.resize(static_cast<std::size_t>(config.repetitions));

    const int workers = std::max(1, std::min(threads, config.repetitions));
    std::atomic<int> next{0};
    auto work = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= config.repetitions) break;
            const std::uint64_t seed =
                derive_seed(config.master_seed, static_cast<std::uint64_t>(i));
            try {
                result.reports[static_cast<std::size_t>(i)] = run_repetition(config, seed);
            } catch (const std::exception&) {
                rl::AttackReport failed;
                failed.scenario_id = config.scenario_id;
                failed.seed = seed;
                failed.termination = "INCOMPLETE";
                failed.final_metrics["error"] = 1.0;
                result.reports[static_cast<std::size_t>(i)] = std::move(failed);
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    aggregate(result);
    result.wall_clock_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string summary_to_json(const ExperimentResult& result, bool include_meta) {
    nlohmann::json doc;
    doc["config"] = nlohmann::json::parse(config_to_json(result.config));
    doc["repetitions"] = result.config.repetitions;
    doc["successful_repetitions"] = result.successful_repetitions;
    doc["failed_repetitions"] = result.failed_repetitions;
    doc["aggregates"] = result.aggregates;
    if (result.vulnerability.defined) {
        doc["vulnerability"] = {{"defined", true},
                                {"value", result.vulnerability.value},
                                {"cost_unit", result.vulnerability.cost_unit}};
        doc["resilience"] = {{"finite", true},
                             {"value", result.resilience.value},
                             {"cost_unit", result.resilience.cost_unit}};
    } else {
        doc["vulnerability"] = {{"defined", false}};
        doc["resilience"] = {{"finite", false}};
    }
    if (include_meta) {
        doc["meta"] = {{"wall_clock_sec", result.wall_clock_sec}};
    }
    return doc.dump(2);
}

namespace {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write: " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void write_result(const ExperimentResult& result, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "rep_%03zu.json", i);
        atomic_write(base / name, rl::report_to_json(result.reports[i]));
    }
    atomic_write(base / "summary.json", summary_to_json(result, /*include_meta=*/true));
}

}  // namespace casim::scenario
