#include "casim/rl/tabular_q.hpp"

#include <cmath>

#include "casim/common/errors.hpp"

namespace casim::rl {

TabularQ::TabularQ(int action_count, double learning_rate, double discount)
    : action_count_(action_count), alpha_(learning_rate), discount_(discount) {
    if (action_count < 1) throw Error("action count must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
        throw Error("learning rate must be in (0, 1]");
    }
    if (!(discount >= 0.0 && discount < 1.0)) {
        throw Error("discount must be in [0, 1)");
    }
}

double TabularQ::value(const std::string& state, int action) const {
    auto it = table_.find(state);
    if (it == table_.end()) return 0.0;
    return it->second[static_cast<std::size_t>(action)];
}

double TabularQ::max_value(const std::string& state) const {
    auto it = table_.find(state);
    if (it == table_.end()) return 0.0;
    double best = it->second[0];
    for (double v : it->second) best = std::max(best, v);
    return best;
}

void TabularQ::update(const std::string& state, int action, double reward,
                      const std::string& next_state, bool terminal) {
    if (!std::isfinite(reward)) throw Error("non-finite reward rejected");
    auto& row = table_.try_emplace(state, std::vector<double>(action_count_, 0.0))
                    .first->second;
    const double bootstrap = terminal ? 0.0 : discount_ * max_value(next_state);
    double& q = row[static_cast<std::size_t>(action)];
    q = (1.0 - alpha_) * q + alpha_ * (reward + bootstrap);
}

int TabularQ::greedy(const std::string& state) const {
    auto it = table_.find(state);
    if (it == table_.end()) return 0;
    int best = 0;
    for (int a = 1; a < action_count_; ++a) {
        if (it->second[static_cast<std::size_t>(a)] >
            it->second[static_cast<std::size_t>(best)]) {
            best = a;
        }
    }
    return best;
}

int TabularQ::greedy_masked(const std::string& state,
                            const std::vector<int>& valid) const {
    if (valid.empty()) throw Error("greedy_masked needs a non-empty action set");
    int best = valid[0];
    for (std::size_t k = 1; k < valid.size(); ++k) {
        if (value(state, valid[k]) > value(state, best)) best = valid[k];
    }
    return best;
}

void EpsilonGreedy::anneal() {
    rate_ = std::max(schedule_.floor, rate_ - schedule_.anneal_step);
}

int EpsilonGreedy::select(const TabularQ& q, const std::string& state, Rng& rng) {
    const bool explore = rng.uniform01() < rate_;
    anneal();
    if (explore) return static_cast<int>(rng.uniform_index(q.action_count()));
    return q.greedy(state);
}

int EpsilonGreedy::select_masked(const TabularQ& q, const std::string& state,
                                 const std::vector<int>& valid, Rng& rng) {
    if (valid.empty()) throw Error("select_masked needs a non-empty action set");
    const bool explore = rng.uniform01() < rate_;
    anneal();
    if (explore) return valid[rng.uniform_index(valid.size())];
    return q.greedy_masked(state, valid);
}

}  // namespace casim::rl
