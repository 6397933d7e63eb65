#include "casim/game/formation_game.hpp"

#include <algorithm>
#include <cmath>

#include "casim/common/errors.hpp"
#include "casim/common/rng.hpp"

namespace casim::game {

FormationGame::FormationGame(const FormationGameConfig& config) {
    if (config.players < 1) throw Error("formation game needs at least 1 player");
    const bool explicit_values = !config.value_matrix.empty();
    if (explicit_values) {
        if (static_cast<int>(config.value_matrix.size()) != config.players) {
            throw Error("value matrix must have one row per player");
        }
        for (const auto& row : config.value_matrix) {
            if (static_cast<int>(row.size()) != config.players) {
                throw Error("value matrix rows must have one entry per player");
            }
        }
        for (int i = 0; i < config.players; ++i) {
            for (int j = 0; j < config.players; ++j) {
                if (i != j) explicit_values_[{i, j}] = config.value_matrix[i][j];
            }
        }
    } else {
        if (static_cast<int>(config.features.size()) != config.players) {
            throw Error("feature vector count must equal player count");
        }
        for (const auto& f : config.features) {
            if (f.size() != config.theta.size()) {
                throw Error("feature dimension must match theta dimension");
            }
            for (double v : f) {
                if (!std::isfinite(v)) throw Error("features must be finite");
            }
        }
    }
    for (int i = 0; i < config.players; ++i) {
        players_.push_back(i);
        if (!explicit_values) features_[i] = config.features[i];
    }
    theta_ = config.theta;
    friends_coeff_ = config.friends_coeff;

    // Shocks are drawn for all ordered pairs up front in a fixed order so
    // they are reproducible from the seed and survive player removal.
    Rng rng(config.shock_seed);
    for (int i = 0; i < config.players; ++i) {
        for (int j = 0; j < config.players; ++j) {
            if (i == j) continue;
            shocks_[{i, j}] = config.shock_scale == 0.0
                                  ? 0.0
                                  : rng.logistic(config.shock_scale);
        }
    }
}

bool FormationGame::has_player(int i) const {
    return std::binary_search(players_.begin(), players_.end(), i);
}

double FormationGame::deterministic_value(int i, int j, const net::Graph& g) const {
    double v = 0.0;
    auto explicit_it = explicit_values_.find({i, j});
    if (explicit_it != explicit_values_.end()) {
        v = explicit_it->second;
    } else {
        const auto& fi = features_.at(i);
        const auto& fj = features_.at(j);
        for (std::size_t d = 0; d < theta_.size(); ++d) {
            v += theta_[d] * std::abs(fi[d] - fj[d]);
        }
    }
    if (friends_coeff_ != 0.0) {
        int common = 0;
        for (int k : g.neighbors(i)) {
            if (k != j && g.adjacent(k, j)) ++common;
        }
        v += friends_coeff_ * common;
    }
    return v;
}

double FormationGame::shock(int i, int j) const {
    auto it = shocks_.find({i, j});
    return it == shocks_.end() ? 0.0 : it->second;
}

double FormationGame::link_value(int i, int j, const net::Graph& g) const {
    return deterministic_value(i, j, g) + shock(i, j);
}

double FormationGame::payoff(int i, const net::Graph& g) const {
    if (!has_player(i)) throw NotFoundError("no such player: " + std::to_string(i));
    double u = 0.0;
    for (int j : g.neighbors(i)) {
        u += link_value(i, j, g);
    }
    return u;
}

std::pair<FormationGame, net::Graph> FormationGame::without_player(
    int i, const net::Graph& g) const {
    if (!has_player(i)) throw NotFoundError("no such player: " + std::to_string(i));
    FormationGame reduced;
    for (int p : players_) {
        if (p != i) reduced.players_.push_back(p);
    }
    for (const auto& [p, f] : features_) {
        if (p != i) reduced.features_[p] = f;
    }
    reduced.theta_ = theta_;
    reduced.friends_coeff_ = friends_coeff_;
    for (const auto& [pair, v] : explicit_values_) {
        if (pair.first != i && pair.second != i) reduced.explicit_values_[pair] = v;
    }
    for (const auto& [pair, eps] : shocks_) {
        if (pair.first != i && pair.second != i) reduced.shocks_[pair] = eps;
    }
    return {std::move(reduced), g.without_node(i)};
}

net::Graph FormationGame::empty_graph() const {
    net::Graph g;
    for (int p : players_) g.add_node(p);
    return g;
}

}  // namespace casim::game
