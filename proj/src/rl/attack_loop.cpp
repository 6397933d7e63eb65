#include "casim/rl/attack_loop.hpp"

#include <algorithm>

#include "casim/common/errors.hpp"

namespace casim::rl {

TabularQ plan_on_surrogate(const Surrogate& model, const AttackMDP& mdp,
                           const std::string& start_state, int episodes, Rng& rng,
                           TabularQ q) {
    if (episodes < 1) throw Error("planning requires at least 1 episode");
    for (int episode = 0; episode < episodes; ++episode) {
        const double rate =
            std::max(0.1, 1.0 - static_cast<double>(episode) / episodes);
        std::string state = start_state;
        for (int step = 0; step < mdp.planning_horizon; ++step) {
            const std::vector<int> valid = mdp.valid_actions(state);
            if (valid.empty()) break;
            int action;
            if (rng.uniform01() < rate) {
                action = valid[rng.uniform_index(valid.size())];
            } else {
                action = q.greedy_masked(state, valid);
            }
            auto sample = model.sample(state, action, rng);
            if (!sample.has_value()) {
                q.update(state, action, 0.0, state, /*terminal=*/true);
                break;
            }
            q.update(state, action, sample->reward, sample->next_state, sample->terminal);
            if (sample->terminal) break;
            state = sample->next_state;
        }
    }
    return q;
}

AttackReport run_attack_loop(TargetAdapter& target, const AttackLoopConfig& config,
                             std::uint64_t seed, const std::string& scenario_id,
                             TabularQ* learned_q) {
    if (config.iteration_cap < 1) throw Error("iteration cap must be >= 1");

    Rng rng(seed);
    target.reset();

    AttackReport report;
    report.scenario_id = scenario_id;
    report.seed = seed;
    report.termination = "CAP_REACHED";

    TabularQ q(target.action_count(), config.learning_rate, config.discount);
    EpsilonGreedy explorer(config.exploration);
    EmpiricalSurrogate empirical;
    SimulatorSurrogate simulator([&target](const std::string& key, int action) {
        auto s = target.simulate(key, action);
        if (!s.has_value()) throw Error("whitebox simulate unavailable for state");
        return *s;
    });
    const bool whitebox = config.whitebox && target.simulate(target.state_key(), 0).has_value();
    const Surrogate& model =
        whitebox ? static_cast<const Surrogate&>(simulator)
                 : static_cast<const Surrogate&>(empirical);

    AttackMDP mdp;
    mdp.action_count = target.action_count();
    mdp.discount = config.discount;
    mdp.planning_horizon = config.planning_horizon;
    mdp.valid_actions = [&target](const std::string& key) {
        return target.valid_actions_for(key);
    };

    double cumulative_cost = 0.0;
    double episode_return = 0.0;
    int episode_actions = 0;

    // episode boundaries are positions in the iteration log
    auto close_episode = [&](bool objective_met, double impact) {
        EpisodeSummary ep;
        ep.start_iteration = static_cast<int>(report.iterations.size()) - episode_actions;
        ep.actions = episode_actions;
        ep.episode_return = episode_return;
        ep.final_impact = impact;
        ep.objective_met = objective_met;
        ep.metrics = target.episode_metrics();
        report.episodes.push_back(std::move(ep));
        episode_actions = 0;
    };

    try {
        for (int iteration = 0; iteration < config.iteration_cap; ++iteration) {
            if (episode_return >= config.objective) {
                if (episode_actions > 0) close_episode(true, target.impact());
                report.success = true;
                report.termination = "SUCCESS";
                break;
            }
            const std::string state = target.state_key();
            const std::vector<int> valid = target.valid_actions();
            if (valid.empty()) {
                if (episode_actions > 0) close_episode(false, target.impact());
                target.reset();
                episode_return = 0.0;
                continue;
            }

            if (!config.warm_start) {
                q = TabularQ(target.action_count(), config.learning_rate, config.discount);
            }
            q = plan_on_surrogate(model, mdp, state, config.planning_episodes, rng,
                                  std::move(q));

            const int action = explorer.select_masked(q, state, valid, rng);
            StepResult res = target.step(action);
            if (!whitebox) {
                estimate_dynamics(empirical,
                                  {state, action, res.reward, res.state_key, res.terminal});
            }
            cumulative_cost += 1.0;
            episode_return += res.reward;
            ++episode_actions;

            report.iterations.push_back(
                {iteration, state, action, res.reward, cumulative_cost, res.impact});

            if (res.terminal) {
                close_episode(res.objective_met, res.impact);
                if (episode_return >= config.objective) {
                    report.success = true;
                    report.termination = "SUCCESS";
                    break;
                }
                target.reset();
                episode_return = 0.0;
            }
        }
        if (episode_actions > 0) {
            close_episode(false, target.impact());
        }
    } catch (const Error&) {
        report.termination = "INCOMPLETE";
    }

    for (const auto& [state, values] : q.table()) {
        report.final_policy[state] = q.greedy(state);
    }
    report.final_metrics["iterations"] = static_cast<double>(report.iterations.size());
    report.final_metrics["episodes"] = static_cast<double>(report.episodes.size());
    report.final_metrics["cumulative_cost"] = cumulative_cost;

    // Cheapest successful episode, measured in attacker actions.
    double best_cost = -1.0;
    for (const auto& ep : report.episodes) {
        if (!ep.objective_met) continue;
        const double cost = std::max(1.0, static_cast<double>(ep.actions));
        if (best_cost < 0.0 || cost < best_cost) best_cost = cost;
    }
    if (best_cost > 0.0) {
        report.final_metrics["min_successful_cost"] = best_cost;
        report.success = true;
        if (report.termination == "CAP_REACHED") report.termination = "SUCCESS";
    }
    if (learned_q) *learned_q = q;
    return report;
}

}  // namespace casim::rl
