#include "casim/rl/surrogate.hpp"

namespace casim::rl {

void EmpiricalSurrogate::observe(const Observation& obs) {
    Outcome& o = transitions_[{obs.state, obs.action}][obs.next_state];
    o.count += 1;
    o.reward_sum += obs.reward;
    if (obs.terminal) o.terminal_count += 1;
    ++observations_;
}

std::optional<SurrogateSample> EmpiricalSurrogate::sample(const std::string& state,
                                                          int action, Rng& rng) const {
    auto it = transitions_.find({state, action});
    if (it == transitions_.end()) return std::nullopt;
    long long total = 0;
    for (const auto& [next, o] : it->second) total += o.count;
    long long pick = static_cast<long long>(rng.uniform_index(static_cast<std::size_t>(total)));
    for (const auto& [next, o] : it->second) {
        pick -= o.count;
        if (pick < 0) {
            SurrogateSample s;
            s.next_state = next;
            s.reward = o.reward_sum / static_cast<double>(o.count);
            s.terminal = o.terminal_count * 2 > o.count;  // majority vote
            return s;
        }
    }
    return std::nullopt;  // unreachable
}

std::map<std::string, double> EmpiricalSurrogate::distribution(const std::string& state,
                                                               int action) const {
    std::map<std::string, double> out;
    auto it = transitions_.find({state, action});
    if (it == transitions_.end()) return out;
    long long total = 0;
    for (const auto& [next, o] : it->second) total += o.count;
    for (const auto& [next, o] : it->second) {
        out[next] = static_cast<double>(o.count) / static_cast<double>(total);
    }
    return out;
}

}  // namespace casim::rl
