#pragma once

#include "casim/game/formation_game.hpp"

namespace casim::game {

/// Exhaustive Nash-stability check. A deviation lets one player replace its
/// own link set; forming a new link additionally requires the counterpart to
/// strictly gain under the deviated graph (consent; severance is free).
/// True iff no player has a feasible deviation that strictly raises its
/// payoff. Requires N <= 12; beyond that a BudgetExceededError suggests a
/// sampled check instead.
bool is_nash_stable(const FormationGame& game, const net::Graph& g);

/// Pairwise stability: no player strictly gains by deleting one of its
/// links, and no unlinked pair exists where one side strictly gains and the
/// other weakly gains from adding the link.
bool is_pairwise_stable(const FormationGame& game, const net::Graph& g);

/// Round-robin best-response dynamics over players in ascending id. Each
/// player plays an exact best response over its own links (additions need
/// the counterpart's strict consent; ties keep the current configuration).
/// Stops when a full round changes nothing or max_rounds is reached.
std::pair<net::Graph, bool> best_response_dynamics(const FormationGame& game,
                                                   net::Graph g0, int max_rounds);

}  // namespace casim::game
