#include "casim/game/stability.hpp"

#include <algorithm>

#include "casim/common/errors.hpp"

namespace casim::game {

namespace {

constexpr int kMaxExactPlayers = 12;

std::vector<int> partners_of(const FormationGame& game, int i) {
    std::vector<int> out;
    for (int p : game.players()) {
        if (p != i) out.push_back(p);
    }
    return out;
}

/// Graph with player i's links replaced by the subset encoded in mask over
/// the sorted partner list.
net::Graph with_links(const net::Graph& g, int i, const std::vector<int>& partners,
                      unsigned mask) {
    net::Graph out = g;
    for (int j : g.neighbors(i)) out = out.without_edge(i, j);
    for (std::size_t k = 0; k < partners.size(); ++k) {
        if (mask & (1u << k)) out.add_edge(i, partners[k]);
    }
    return out;
}

unsigned current_mask(const net::Graph& g, int i, const std::vector<int>& partners) {
    unsigned mask = 0;
    for (std::size_t k = 0; k < partners.size(); ++k) {
        if (g.adjacent(i, partners[k])) mask |= (1u << k);
    }
    return mask;
}

/// New links need the counterpart to strictly gain under the deviated graph;
/// severed links need no consent.
bool deviation_feasible(const FormationGame& game, const net::Graph& g,
                        const net::Graph& deviated,
                        const std::vector<int>& partners, unsigned mask,
                        unsigned current) {
    for (std::size_t k = 0; k < partners.size(); ++k) {
        const unsigned bit = 1u << k;
        if ((mask & bit) && !(current & bit)) {
            if (game.payoff(partners[k], deviated) <= game.payoff(partners[k], g)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

bool is_nash_stable(const FormationGame& game, const net::Graph& g) {
    if (game.player_count() > kMaxExactPlayers) {
        throw BudgetExceededError(
            "exact stability check limited to 12 players; use a sampled check");
    }
    for (int i : game.players()) {
        const auto partners = partners_of(game, i);
        const unsigned current = current_mask(g, i, partners);
        const double u_now = game.payoff(i, g);
        const unsigned limit = 1u << partners.size();
        for (unsigned mask = 0; mask < limit; ++mask) {
            if (mask == current) continue;
            net::Graph deviated = with_links(g, i, partners, mask);
            if (game.payoff(i, deviated) <= u_now) continue;
            if (deviation_feasible(game, g, deviated, partners, mask, current)) {
                return false;
            }
        }
    }
    return true;
}

bool is_pairwise_stable(const FormationGame& game, const net::Graph& g) {
    // (a) single-link deletions
    for (const net::Edge& e : g.edges()) {
        net::Graph cut = g.without_edge(e.from, e.to);
        if (game.payoff(e.from, cut) > game.payoff(e.from, g)) return false;
        if (game.payoff(e.to, cut) > game.payoff(e.to, g)) return false;
    }
    // (b) single-link additions: blocking when one side strictly gains and
    // the other at least weakly gains
    const auto& players = game.players();
    for (std::size_t a = 0; a < players.size(); ++a) {
        for (std::size_t b = a + 1; b < players.size(); ++b) {
            const int i = players[a];
            const int j = players[b];
            if (g.adjacent(i, j)) continue;
            net::Graph joined = g;
            joined.add_edge(i, j);
            const double gain_i = game.payoff(i, joined) - game.payoff(i, g);
            const double gain_j = game.payoff(j, joined) - game.payoff(j, g);
            if ((gain_i > 0.0 && gain_j >= 0.0) || (gain_j > 0.0 && gain_i >= 0.0)) {
                return false;
            }
        }
    }
    return true;
}

std::pair<net::Graph, bool> best_response_dynamics(const FormationGame& game,
                                                   net::Graph g0, int max_rounds) {
    if (max_rounds < 1) throw Error("best_response_dynamics needs max_rounds >= 1");
    if (game.player_count() > kMaxExactPlayers) {
        throw BudgetExceededError(
            "exact best response limited to 12 players; use a sampled check");
    }
    net::Graph g = std::move(g0);
    for (int round = 0; round < max_rounds; ++round) {
        bool changed = false;
        for (int i : game.players()) {
            const auto partners = partners_of(game, i);
            const unsigned current = current_mask(g, i, partners);
            double best_value = game.payoff(i, g);
            unsigned best_mask = current;
            net::Graph best_graph = g;
            const unsigned limit = 1u << partners.size();
            for (unsigned mask = 0; mask < limit; ++mask) {
                if (mask == current) continue;
                net::Graph deviated = with_links(g, i, partners, mask);
                const double value = game.payoff(i, deviated);
                if (value <= best_value) continue;  // ties keep current
                if (!deviation_feasible(game, g, deviated, partners, mask, current)) {
                    continue;
                }
                best_value = value;
                best_mask = mask;
                best_graph = std::move(deviated);
            }
            if (best_mask != current) {
                g = std::move(best_graph);
                changed = true;
            }
        }
        if (!changed) return {std::move(g), true};
    }
    return {std::move(g), false};
}

}  // namespace casim::game
