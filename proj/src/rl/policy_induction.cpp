#include "casim/rl/policy_induction.hpp"

#include <string>

#include "casim/common/errors.hpp"
#include "casim/common/rng.hpp"
#include "casim/rl/tabular_q.hpp"

namespace casim::rl {

namespace {

constexpr int kLeft = 0;
constexpr int kRight = 1;

struct Corridor {
    int length;

    struct Step {
        int next;
        double reward;
        bool terminal;
    };

    Step step(int s, int action) const {
        const int next = action == kLeft ? s - 1 : s + 1;
        if (next <= 0) return {0, -1.0, true};
        if (next >= length - 1) return {length - 1, 1.0, true};
        return {next, 0.0, false};
    }

    int start() const { return length / 2; }
};

std::string key(int s) { return std::to_string(s); }

/// Phase 1: train the adversary on the negated reward until its greedy
/// policy is the loss-seeking one.
std::vector<int> train_adversary(const Corridor& env, std::uint64_t seed) {
    Rng rng(seed);
    TabularQ q(2, 0.5, 0.9);
    double rate = 1.0;
    const double anneal = 1.0 / 1500.0;
    for (int episode = 0; episode < 2000; ++episode) {
        int s = env.start();
        for (int t = 0; t < 60; ++t) {
            int a;
            if (rng.uniform01() < rate) a = static_cast<int>(rng.uniform_index(2));
            else a = q.greedy(key(s));
            rate = std::max(0.05, rate - anneal);
            auto res = env.step(s, a);
            q.update(key(s), a, -res.reward, key(res.next), res.terminal);
            s = res.next;
            if (res.terminal) break;
        }
    }
    std::vector<int> policy(env.length);
    for (int s = 0; s < env.length; ++s) policy[s] = q.greedy(key(s));
    return policy;
}

struct TargetRun {
    std::vector<double> epoch_reward;
    TabularQ q;
};

/// The adversary's observation choice for true state s within {s, mirror}.
int substitute(const TabularQ& q, const std::vector<int>& adv, int length, int s,
               bool aligned, bool attack) {
    if (!attack) return s;
    const int m = length - 1 - s;
    if (m == s) return s;
    const int want = adv[static_cast<std::size_t>(s)];
    if (aligned) {
        const bool s_agrees = q.greedy(key(s)) == want;
        const bool m_agrees = q.greedy(key(m)) == want;
        if (s_agrees && m_agrees) {
            const double vs = q.max_value(key(s));
            const double vm = q.max_value(key(m));
            if (vs > vm) return s;
            return m;  // value tie prefers the perturbed candidate
        }
        if (s_agrees) return s;
        if (m_agrees) return m;
        return q.max_value(key(s)) >= q.max_value(key(m)) ? s : m;
    }
    return q.max_value(key(s)) <= q.max_value(key(m)) ? s : m;
}

TargetRun train_target(const Corridor& env, const PolicyInductionConfig& cfg,
                       const std::vector<int>& adv, std::uint64_t seed, bool attack) {
    Rng rng(seed);
    TargetRun out{{}, TabularQ(2, cfg.learning_rate, cfg.discount)};
    TabularQ& q = out.q;
    double rate = 1.0;
    const double total_actions =
        static_cast<double>(cfg.epochs) * cfg.episodes_per_epoch * 6.0;
    const double anneal = 1.0 / (total_actions * cfg.anneal_fraction);

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        double total = 0.0;
        for (int episode = 0; episode < cfg.episodes_per_epoch; ++episode) {
            int s = env.start();
            int obs = substitute(q, adv, env.length, s, true, attack);
            for (int t = 0; t < cfg.episode_step_cap; ++t) {
                int a;
                if (rng.uniform01() < rate) a = static_cast<int>(rng.uniform_index(2));
                else a = q.greedy(key(obs));
                rate = std::max(cfg.exploration_floor, rate - anneal);
                auto res = env.step(s, a);
                const bool aligned = a == adv[static_cast<std::size_t>(s)];
                const int obs_next = substitute(q, adv, env.length, res.next, aligned, attack);
                q.update(key(obs), a, res.reward, key(obs_next), res.terminal);
                total += res.reward;
                s = res.next;
                obs = obs_next;
                if (res.terminal) break;
            }
        }
        out.epoch_reward.push_back(total / cfg.episodes_per_epoch);
    }
    return out;
}

}  // namespace

PolicyInductionResult policy_induction_experiment(const PolicyInductionConfig& config,
                                                  std::uint64_t seed) {
    if (config.corridor_length < 5 || config.corridor_length > 100) {
        throw Error("corridor length must be in [5, 100]");
    }
    if (config.epochs < 2 || config.episodes_per_epoch < 1) {
        throw Error("need at least 2 epochs and 1 episode per epoch");
    }
    const Corridor env{config.corridor_length};

    PolicyInductionResult result;
    result.adversarial_policy = train_adversary(env, derive_seed(seed, 1));

    const std::uint64_t target_seed = derive_seed(seed, 2);
    TargetRun clean = train_target(env, config, result.adversarial_policy, target_seed,
                                   /*attack=*/false);
    TargetRun attacked = train_target(env, config, result.adversarial_policy, target_seed,
                                      /*attack=*/config.mirror_budget);
    result.unperturbed_epoch_reward = std::move(clean.epoch_reward);
    result.perturbed_epoch_reward = std::move(attacked.epoch_reward);

    int agreeing = 0;
    const int interior = config.corridor_length - 2;
    for (int s = 1; s <= interior; ++s) {
        const int obs = substitute(attacked.q, result.adversarial_policy,
                                   config.corridor_length, s, true, config.mirror_budget);
        if (attacked.q.greedy(key(obs)) == result.adversarial_policy[static_cast<std::size_t>(s)]) {
            ++agreeing;
        }
    }
    result.final_agreement = static_cast<double>(agreeing) / interior;

    const int half = config.epochs / 2;
    double perturbed_sum = 0.0;
    double clean_sum = 0.0;
    for (int e = half; e < config.epochs; ++e) {
        if (result.perturbed_epoch_reward[static_cast<std::size_t>(e)] <
            result.unperturbed_epoch_reward[static_cast<std::size_t>(e)]) {
            ++result.final_half_epochs_below;
        }
        perturbed_sum += result.perturbed_epoch_reward[static_cast<std::size_t>(e)];
        clean_sum += result.unperturbed_epoch_reward[static_cast<std::size_t>(e)];
    }
    result.final_half_mean_below = perturbed_sum < clean_sum;
    return result;
}

}  // namespace casim::rl
