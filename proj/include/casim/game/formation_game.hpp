#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "casim/net/graph.hpp"

namespace casim::game {

/// Parameters of a strategic network formation game.
struct FormationGameConfig {
    int players = 0;
    /// Exogenous feature vector per player, indexed by player id.
    std::vector<std::vector<double>> features;
    /// Homophily coefficients, one per feature dimension.
    std::vector<double> theta;
    /// Coefficient of the friends-in-common term (0 disables it).
    double friends_coeff = 0.0;
    /// Scale of the idiosyncratic logistic shocks (0 disables them).
    double shock_scale = 0.0;
    std::uint64_t shock_seed = 0;
    /// Optional explicit deterministic values per ordered pair (row i gives
    /// V_ij). When non-empty it replaces the homophily form; the
    /// friends-in-common term still applies on top. The homophily distances
    /// are symmetric, so node-asymmetric games need this override.
    std::vector<std::vector<double>> value_matrix;
};

/// Network formation game: each player i derives payoff
///   U_i = sum_{j linked to i} (V_ij + eps_ij)
/// where V_ij = theta . |F_i - F_j| + friends_coeff * common_neighbors(i, j)
/// and eps_ij is a seeded logistic shock known to the simulator but hidden
/// from in-game opponents. Single link type with binary weights.
class FormationGame {
public:
    explicit FormationGame(const FormationGameConfig& config);

    /// Active player ids, ascending.
    const std::vector<int>& players() const { return players_; }
    int player_count() const { return static_cast<int>(players_.size()); }
    bool has_player(int i) const;

    /// Deterministic payoff component V_ij of the link i-j under graph g
    /// (the i-j edge itself never feeds the friends-in-common count).
    double deterministic_value(int i, int j, const net::Graph& g) const;
    double shock(int i, int j) const;
    /// Marginal value of link i-j to player i: V_ij + eps_ij.
    double link_value(int i, int j, const net::Graph& g) const;

    /// Total payoff of player i under link configuration g.
    double payoff(int i, const net::Graph& g) const;

    /// The game and graph with player i removed (links restricted).
    std::pair<FormationGame, net::Graph> without_player(int i, const net::Graph& g) const;

    /// Empty graph over the active players.
    net::Graph empty_graph() const;

private:
    FormationGame() = default;

    std::vector<int> players_;
    std::map<int, std::vector<double>> features_;
    std::vector<double> theta_;
    double friends_coeff_ = 0.0;
    std::map<std::pair<int, int>, double> explicit_values_;  // ordered pairs
    std::map<std::pair<int, int>, double> shocks_;           // ordered pairs
};

/// Current play state: a link configuration plus which players may act.
struct GameState {
    net::Graph graph;
    std::vector<int> active_players;
};

}  // namespace casim::game
