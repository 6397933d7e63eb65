#pragma once

#include <map>
#include <string>
#include <vector>

#include "casim/common/rng.hpp"

namespace casim::rl {

/// State-action value table over string state keys. Unseen pairs read as 0.
class TabularQ {
public:
    TabularQ(int action_count, double learning_rate, double discount);

    int action_count() const { return action_count_; }
    double learning_rate() const { return alpha_; }
    double discount() const { return discount_; }

    double value(const std::string& state, int action) const;
    /// max_a Q(state, a); 0 for unseen states.
    double max_value(const std::string& state) const;

    /// Q(s,a) <- (1-alpha) Q(s,a) + alpha (r + discount * max_a' Q(s',a')),
    /// with the bootstrap term dropped on terminal transitions.
    /// Non-finite reward -> Error.
    void update(const std::string& state, int action, double reward,
                const std::string& next_state, bool terminal);

    /// argmax_a Q(state, a); ties break to the lowest action index, so an
    /// unseen state yields action 0.
    int greedy(const std::string& state) const;
    /// Greedy restricted to `valid` (non-empty, ascending action indices).
    int greedy_masked(const std::string& state, const std::vector<int>& valid) const;

    std::size_t state_count() const { return table_.size(); }
    const std::map<std::string, std::vector<double>>& table() const { return table_; }

private:
    int action_count_;
    double alpha_;
    double discount_;
    std::map<std::string, std::vector<double>> table_;
};

/// Exploration rate with linear annealing: starts at `initial`, drops by
/// `anneal_step` after every draw, never below `floor`.
struct ExplorationSchedule {
    double initial = 1.0;
    double anneal_step = 0.0;
    double floor = 0.0;
};

/// Epsilon-greedy action selection with a linearly annealed rate.
class EpsilonGreedy {
public:
    explicit EpsilonGreedy(ExplorationSchedule schedule)
        : schedule_(schedule), rate_(schedule.initial) {}

    double rate() const { return rate_; }

    /// Random action with probability rate(), else greedy; anneals after
    /// every call.
    int select(const TabularQ& q, const std::string& state, Rng& rng);
    int select_masked(const TabularQ& q, const std::string& state,
                      const std::vector<int>& valid, Rng& rng);

private:
    void anneal();

    ExplorationSchedule schedule_;
    double rate_;
};

}  // namespace casim::rl
