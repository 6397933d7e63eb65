#include "casim/rl/adapters.hpp"

#include <algorithm>

#include "casim/common/errors.hpp"
#include "casim/game/stability.hpp"
#include "casim/net/metrics.hpp"

namespace casim::rl {

std::string id_set_key(const std::vector<int>& sorted_ids) {
    std::string key;
    for (std::size_t i = 0; i < sorted_ids.size(); ++i) {
        if (i) key += ',';
        key += std::to_string(sorted_ids[i]);
    }
    return key;
}

std::vector<int> parse_id_set_key(const std::string& key) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < key.size()) {
        std::size_t comma = key.find(',', pos);
        if (comma == std::string::npos) comma = key.size();
        out.push_back(std::stoi(key.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// GridCascadeAdapter

GridCascadeAdapter::GridCascadeAdapter(grid::PowerGrid pristine, int collapse_threshold,
                                       RewardWeights weights)
    : pristine_(std::move(pristine)),
      current_(pristine_),
      collapse_threshold_(collapse_threshold),
      weights_(weights) {
    for (const auto& line : pristine_.lines()) line_ids_.push_back(line.id);
}

void GridCascadeAdapter::reset() {
    current_ = pristine_;
    episode_cascades_.clear();
    direct_trips_ = 0;
    cascaded_ = 0;
    bonus_paid_ = false;
}

std::string GridCascadeAdapter::state_key() const {
    std::vector<int> failed;
    for (const auto& line : current_.lines()) {
        if (!line.alive) failed.push_back(line.id);
    }
    std::sort(failed.begin(), failed.end());
    return id_set_key(failed);
}

int GridCascadeAdapter::action_count() const {
    return static_cast<int>(line_ids_.size());
}

std::vector<int> GridCascadeAdapter::valid_actions() const {
    return valid_actions_for(state_key());
}

std::vector<int> GridCascadeAdapter::valid_actions_for(const std::string& key) const {
    std::vector<int> failed = parse_id_set_key(key);
    std::vector<int> out;
    for (std::size_t i = 0; i < line_ids_.size(); ++i) {
        if (!std::binary_search(failed.begin(), failed.end(), line_ids_[i])) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

StepResult GridCascadeAdapter::step(int action) {
    if (action < 0 || action >= action_count()) {
        throw InvalidActionError("grid action out of range");
    }
    auto [settled, cascade] =
        grid::trip_line(current_, line_ids_[static_cast<std::size_t>(action)],
                        collapse_threshold_);
    current_ = std::move(settled);
    direct_trips_ += 1;
    cascaded_ += static_cast<int>(cascade.cascaded_failures.size());
    episode_cascades_.push_back(cascade);

    StepResult res;
    res.reward = weights_.direct_cost +
                 weights_.cascade_gain * static_cast<double>(cascade.cascaded_failures.size());
    res.objective_met = current_.is_collapsed(collapse_threshold_);
    if (res.objective_met && !bonus_paid_) {
        res.reward += weights_.objective_bonus;
        bonus_paid_ = true;
    }
    res.state_key = state_key();
    res.impact = static_cast<double>(current_.failed_line_count());
    res.terminal = res.objective_met || current_.alive_line_ids().empty();
    return res;
}

double GridCascadeAdapter::impact() const {
    return static_cast<double>(current_.failed_line_count());
}

std::string GridCascadeAdapter::episode_cascades_json() const {
    std::string out = "[";
    for (std::size_t i = 0; i < episode_cascades_.size(); ++i) {
        if (i) out += ",";
        out += grid::cascade_to_json(episode_cascades_[i]);
    }
    return out + "]";
}

std::map<std::string, double> GridCascadeAdapter::episode_metrics() const {
    return {{"direct_trips", static_cast<double>(direct_trips_)},
            {"cascaded_failures", static_cast<double>(cascaded_)},
            {"total_failures", static_cast<double>(current_.failed_line_count())}};
}

// ---------------------------------------------------------------------------
// FragmentationAdapter

FragmentationAdapter::FragmentationAdapter(net::Graph initial, int removal_budget,
                                           double objective_fragmentation,
                                           RewardWeights weights)
    : initial_(std::move(initial)),
      current_(initial_),
      removal_budget_(removal_budget),
      objective_(objective_fragmentation),
      weights_(weights) {
    node_ids_ = initial_.nodes();
    if (removal_budget_ + 2 > static_cast<int>(node_ids_.size())) {
        throw Error("removal budget leaves fewer than 2 nodes");
    }
    initial_fragmentation_ = net::fragmentation(initial_);
    fragmentation_ = initial_fragmentation_;
}

void FragmentationAdapter::reset() {
    current_ = initial_;
    removed_.clear();
    fragmentation_ = initial_fragmentation_;
    bonus_paid_ = false;
}

std::string FragmentationAdapter::state_key() const { return id_set_key(removed_); }

int FragmentationAdapter::action_count() const {
    return static_cast<int>(node_ids_.size());
}

std::vector<int> FragmentationAdapter::valid_actions() const {
    return valid_actions_for(state_key());
}

std::vector<int> FragmentationAdapter::valid_actions_for(const std::string& key) const {
    std::vector<int> removed = parse_id_set_key(key);
    if (static_cast<int>(removed.size()) >= removal_budget_) return {};
    std::vector<int> out;
    for (std::size_t i = 0; i < node_ids_.size(); ++i) {
        if (!std::binary_search(removed.begin(), removed.end(), node_ids_[i])) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

StepResult FragmentationAdapter::step(int action) {
    if (action < 0 || action >= action_count()) {
        throw InvalidActionError("graph action out of range");
    }
    const int node = node_ids_[static_cast<std::size_t>(action)];
    current_ = current_.without_node(node);
    removed_.insert(std::lower_bound(removed_.begin(), removed_.end(), node), node);
    const double previous = fragmentation_;
    fragmentation_ = net::fragmentation(current_);

    StepResult res;
    res.reward = weights_.direct_cost +
                 weights_.cascade_gain * (fragmentation_ - previous);
    res.objective_met = fragmentation_ >= objective_;
    if (res.objective_met && !bonus_paid_) {
        res.reward += weights_.objective_bonus;
        bonus_paid_ = true;
    }
    res.state_key = state_key();
    res.impact = fragmentation_;
    res.terminal =
        res.objective_met || static_cast<int>(removed_.size()) >= removal_budget_;
    return res;
}

double FragmentationAdapter::impact() const { return fragmentation_; }

std::map<std::string, double> FragmentationAdapter::episode_metrics() const {
    return {{"removals", static_cast<double>(removed_.size())},
            {"fragmentation", fragmentation_}};
}

std::optional<SurrogateSample> FragmentationAdapter::simulate(const std::string& key,
                                                              int action) const {
    std::vector<int> removed = parse_id_set_key(key);
    if (static_cast<int>(removed.size()) >= removal_budget_) return std::nullopt;
    const int node = node_ids_[static_cast<std::size_t>(action)];
    if (std::binary_search(removed.begin(), removed.end(), node)) return std::nullopt;

    net::Graph g = initial_;
    double before = initial_fragmentation_;
    for (int id : removed) g = g.without_node(id);
    if (!removed.empty()) before = net::fragmentation(g);
    g = g.without_node(node);
    const double after = net::fragmentation(g);

    removed.insert(std::lower_bound(removed.begin(), removed.end(), node), node);
    SurrogateSample s;
    s.next_state = id_set_key(removed);
    s.reward = weights_.direct_cost + weights_.cascade_gain * (after - before);
    const bool objective = after >= objective_;
    // The one-shot objective bonus is approximated as payable whenever the
    // objective line is crossed; episodes end there, so it never double-pays.
    if (objective) s.reward += weights_.objective_bonus;
    s.terminal = objective || static_cast<int>(removed.size()) >= removal_budget_;
    return s;
}

// ---------------------------------------------------------------------------
// FormationGameAdapter

FormationGameAdapter::FormationGameAdapter(game::FormationGame game, net::Graph settled,
                                           int removal_budget,
                                           double objective_fragmentation,
                                           int best_response_rounds, RewardWeights weights)
    : initial_game_(std::move(game)),
      initial_graph_(std::move(settled)),
      graph_(initial_graph_),
      removal_budget_(removal_budget),
      objective_(objective_fragmentation),
      br_rounds_(best_response_rounds),
      weights_(weights) {
    game_ = std::make_unique<game::FormationGame>(initial_game_);
    player_ids_ = initial_game_.players();
    if (removal_budget_ + 2 > static_cast<int>(player_ids_.size())) {
        throw Error("removal budget leaves fewer than 2 players");
    }
    fragmentation_ = net::fragmentation(graph_);
}

void FormationGameAdapter::reset() {
    game_ = std::make_unique<game::FormationGame>(initial_game_);
    graph_ = initial_graph_;
    removed_.clear();
    fragmentation_ = net::fragmentation(graph_);
    bonus_paid_ = false;
}

std::string FormationGameAdapter::state_key() const { return id_set_key(removed_); }

int FormationGameAdapter::action_count() const {
    return static_cast<int>(player_ids_.size());
}

std::vector<int> FormationGameAdapter::valid_actions() const {
    return valid_actions_for(state_key());
}

std::vector<int> FormationGameAdapter::valid_actions_for(const std::string& key) const {
    std::vector<int> removed = parse_id_set_key(key);
    if (static_cast<int>(removed.size()) >= removal_budget_) return {};
    std::vector<int> out;
    for (std::size_t i = 0; i < player_ids_.size(); ++i) {
        if (!std::binary_search(removed.begin(), removed.end(), player_ids_[i])) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

StepResult FormationGameAdapter::step(int action) {
    if (action < 0 || action >= action_count()) {
        throw InvalidActionError("game action out of range");
    }
    const int player = player_ids_[static_cast<std::size_t>(action)];
    if (!game_->has_player(player)) {
        throw InvalidActionError("player already removed: " + std::to_string(player));
    }
    auto [reduced, cut] = game_->without_player(player, graph_);
    auto [settled, converged] = game::best_response_dynamics(reduced, cut, br_rounds_);
    (void)converged;
    game_ = std::make_unique<game::FormationGame>(std::move(reduced));
    graph_ = std::move(settled);
    removed_.insert(std::lower_bound(removed_.begin(), removed_.end(), player), player);

    const double previous = fragmentation_;
    fragmentation_ = net::fragmentation(graph_);

    StepResult res;
    res.reward = weights_.direct_cost +
                 weights_.cascade_gain * (fragmentation_ - previous);
    res.objective_met = fragmentation_ >= objective_;
    if (res.objective_met && !bonus_paid_) {
        res.reward += weights_.objective_bonus;
        bonus_paid_ = true;
    }
    res.state_key = state_key();
    res.impact = fragmentation_;
    res.terminal =
        res.objective_met || static_cast<int>(removed_.size()) >= removal_budget_;
    return res;
}

double FormationGameAdapter::impact() const { return fragmentation_; }

std::map<std::string, double> FormationGameAdapter::episode_metrics() const {
    return {{"removals", static_cast<double>(removed_.size())},
            {"fragmentation", fragmentation_}};
}

game::GameState FormationGameAdapter::state() const {
    return {graph_, game_->players()};
}

}  // namespace casim::rl
