#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "casim/common/errors.hpp"
#include "casim/common/rng.hpp"
#include "casim/game/formation_game.hpp"
#include "casim/game/stability.hpp"
#include "casim/net/metrics.hpp"

using namespace casim;
using namespace casim::game;

namespace {

/// All ordered pairs share the same deterministic value v.
FormationGame uniform_game(int players, double v) {
    FormationGameConfig cfg;
    cfg.players = players;
    cfg.value_matrix.assign(static_cast<std::size_t>(players),
                            std::vector<double>(static_cast<std::size_t>(players), v));
    return FormationGame(cfg);
}

net::Graph complete_graph(const FormationGame& game) {
    net::Graph g = game.empty_graph();
    const auto& players = game.players();
    for (std::size_t a = 0; a < players.size(); ++a) {
        for (std::size_t b = a + 1; b < players.size(); ++b) {
            g.add_edge(players[a], players[b]);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Brute-force stability oracle on dense adjacency matrices, independent of
// the library's deviation enumeration.

struct OracleGame {
    int n;
    const FormationGame* game;

    double payoff(int i, const std::vector<std::vector<bool>>& adj) const {
        net::Graph g;
        for (int v = 0; v < n; ++v) g.add_node(v);
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (adj[a][b]) g.add_edge(a, b);
            }
        }
        return game->payoff(i, g);
    }
};

std::vector<std::vector<bool>> dense(const net::Graph& g, int n) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const net::Edge& e : g.edges()) {
        adj[e.from][e.to] = adj[e.to][e.from] = true;
    }
    return adj;
}

bool oracle_nash_stable(const OracleGame& og, const std::vector<std::vector<bool>>& adj) {
    for (int i = 0; i < og.n; ++i) {
        const double now = og.payoff(i, adj);
        for (unsigned mask = 0; mask < (1u << (og.n - 1)); ++mask) {
            auto trial = adj;
            std::vector<int> added;
            int bit = 0;
            for (int j = 0; j < og.n; ++j) {
                if (j == i) continue;
                const bool want = (mask & (1u << bit)) != 0;
                if (want && !adj[i][j]) added.push_back(j);
                trial[i][j] = trial[j][i] = want;
                ++bit;
            }
            if (og.payoff(i, trial) <= now) continue;
            bool feasible = true;
            for (int j : added) {
                if (og.payoff(j, trial) <= og.payoff(j, adj)) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) return false;
        }
    }
    return true;
}

bool oracle_pairwise_stable(const OracleGame& og,
                            const std::vector<std::vector<bool>>& adj) {
    for (int a = 0; a < og.n; ++a) {
        for (int b = a + 1; b < og.n; ++b) {
            auto trial = adj;
            if (adj[a][b]) {
                trial[a][b] = trial[b][a] = false;
                if (og.payoff(a, trial) > og.payoff(a, adj)) return false;
                if (og.payoff(b, trial) > og.payoff(b, adj)) return false;
            } else {
                trial[a][b] = trial[b][a] = true;
                const double ga = og.payoff(a, trial) - og.payoff(a, adj);
                const double gb = og.payoff(b, trial) - og.payoff(b, adj);
                if ((ga > 0 && gb >= 0) || (gb > 0 && ga >= 0)) return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("agent payoff: empty, single link, homophily sum") {
    FormationGameConfig cfg;
    cfg.players = 3;
    cfg.theta = {1.0};
    cfg.features = {{0.0}, {1.0}, {3.0}};
    FormationGame game(cfg);

    net::Graph empty = game.empty_graph();
    CHECK(game.payoff(0, empty) == doctest::Approx(0.0));

    net::Graph linked = empty;
    linked.add_edge(0, 1);
    linked.add_edge(0, 2);
    CHECK(game.payoff(0, linked) == doctest::Approx(4.0));  // |0-1| + |0-3|
    CHECK(game.payoff(1, linked) == doctest::Approx(1.0));

    // additivity over links
    net::Graph one = empty;
    one.add_edge(0, 1);
    net::Graph two = empty;
    two.add_edge(0, 2);
    CHECK(game.payoff(0, linked) ==
          doctest::Approx(game.payoff(0, one) + game.payoff(0, two)));
}

TEST_CASE("agent payoff: explicit single-link value plus shock") {
    FormationGameConfig cfg;
    cfg.players = 2;
    cfg.value_matrix = {{0.0, 2.0}, {2.0, 0.0}};
    FormationGame game(cfg);
    net::Graph g = game.empty_graph();
    g.add_edge(0, 1);
    CHECK(game.payoff(0, g) == doctest::Approx(2.0));
    // a one-term sum with a known shock: V + eps
    CHECK(game.link_value(0, 1, g) ==
          doctest::Approx(game.deterministic_value(0, 1, g) + game.shock(0, 1)));
}

TEST_CASE("agent payoff: seeded shocks reproducible, directed") {
    FormationGameConfig cfg;
    cfg.players = 4;
    cfg.theta = {0.5};
    cfg.features = {{0.0}, {1.0}, {2.0}, {3.0}};
    cfg.shock_scale = 1.0;
    cfg.shock_seed = 99;
    FormationGame g1(cfg);
    FormationGame g2(cfg);
    net::Graph graph = g1.empty_graph();
    graph.add_edge(0, 1);
    CHECK(g1.payoff(0, graph) == g2.payoff(0, graph));
    CHECK(g1.shock(0, 1) == g2.shock(0, 1));
    CHECK(g1.shock(0, 1) != g1.shock(1, 0));
}

TEST_CASE("friends-in-common term raises linked-pair values") {
    FormationGameConfig cfg;
    cfg.players = 3;
    cfg.value_matrix = {{0.0, 1.0, 1.0}, {1.0, 0.0, 1.0}, {1.0, 1.0, 0.0}};
    cfg.friends_coeff = 0.5;
    FormationGame game(cfg);
    net::Graph tri = complete_graph(game);
    // in the triangle every pair has exactly one common neighbor
    CHECK(game.deterministic_value(0, 1, tri) == doctest::Approx(1.5));
    net::Graph pair = game.empty_graph();
    pair.add_edge(0, 1);
    CHECK(game.deterministic_value(0, 1, pair) == doctest::Approx(1.0));
}

TEST_CASE("nash stability: complete-positive, empty-pair, indifference") {
    FormationGame uniform = uniform_game(4, 1.0);
    CHECK(is_nash_stable(uniform, complete_graph(uniform)));

    // two players, both directions positive, empty graph: forming improves
    FormationGame pair = uniform_game(2, 1.0);
    CHECK_FALSE(is_nash_stable(pair, pair.empty_graph()));

    FormationGame flat = uniform_game(4, 0.0);
    CHECK(is_nash_stable(flat, flat.empty_graph()));
    CHECK(is_nash_stable(flat, complete_graph(flat)));
}

TEST_CASE("nash stability: budget guard beyond 12 players") {
    FormationGame big = uniform_game(13, 1.0);
    CHECK_THROWS_AS(is_nash_stable(big, big.empty_graph()), BudgetExceededError);
}

TEST_CASE("pairwise stability: deletions, strict+weak addition, negative empty") {
    FormationGame uniform = uniform_game(4, 1.0);
    CHECK(is_pairwise_stable(uniform, complete_graph(uniform)));

    // V_01 = 1 (strict gain for 0), V_10 = 0 (weak gain for 1): blocking
    FormationGameConfig cfg;
    cfg.players = 2;
    cfg.value_matrix = {{0.0, 1.0}, {0.0, 0.0}};
    FormationGame asym(cfg);
    CHECK_FALSE(is_pairwise_stable(asym, asym.empty_graph()));

    FormationGame negative = uniform_game(3, -1.0);
    CHECK(is_pairwise_stable(negative, negative.empty_graph()));
}

TEST_CASE("disjointness: NS-not-PS instance") {
    // Player 0 strictly gains from the link, player 1 gains exactly 0.
    // The pair blocks pairwise stability (strict + weak), but consent-based
    // unilateral formation requires the counterpart to gain strictly, so no
    // Nash deviation exists.
    FormationGameConfig cfg;
    cfg.players = 2;
    cfg.value_matrix = {{0.0, 1.0}, {0.0, 0.0}};
    FormationGame game(cfg);
    net::Graph empty = game.empty_graph();
    CHECK(is_nash_stable(game, empty));
    CHECK_FALSE(is_pairwise_stable(game, empty));

    OracleGame og{2, &game};
    CHECK(oracle_nash_stable(og, dense(empty, 2)));
    CHECK_FALSE(oracle_pairwise_stable(og, dense(empty, 2)));
}

TEST_CASE("disjointness: PS-not-NS instance") {
    // Triangle with friends-in-common synergy: player 0's links are each
    // worth keeping one at a time (deleting one also destroys the common
    // friend of the other), but dropping both at once is profitable. Single
    // deletions are all unprofitable and no additions exist, so the triangle
    // is pairwise stable while Nash deviations (multi-link severance, no
    // consent needed) break it.
    FormationGameConfig cfg;
    cfg.players = 3;
    cfg.value_matrix = {{0.0, -1.5, -1.5}, {2.0, 0.0, 2.0}, {2.0, 2.0, 0.0}};
    cfg.friends_coeff = 1.0;
    FormationGame game(cfg);
    net::Graph triangle = complete_graph(game);

    // payoff arithmetic: U_0 = 2(-1.5 + 1) = -1; deleting one link leaves
    // -1.5; deleting both leaves 0 > -1
    CHECK(game.payoff(0, triangle) == doctest::Approx(-1.0));
    CHECK_FALSE(is_nash_stable(game, triangle));
    CHECK(is_pairwise_stable(game, triangle));

    OracleGame og{3, &game};
    CHECK_FALSE(oracle_nash_stable(og, dense(triangle, 3)));
    CHECK(oracle_pairwise_stable(og, dense(triangle, 3)));
}

TEST_CASE("best response dynamics: fixed point, pair formation, NS output") {
    FormationGame uniform = uniform_game(4, 1.0);
    auto [stable, converged1] =
        best_response_dynamics(uniform, complete_graph(uniform), 10);
    CHECK(converged1);
    CHECK(stable.edge_count() == complete_graph(uniform).edge_count());

    FormationGame pair = uniform_game(2, 1.0);
    auto [formed, converged2] = best_response_dynamics(pair, pair.empty_graph(), 10);
    CHECK(converged2);
    CHECK(formed.edge_count() == 1);

    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        FormationGameConfig cfg;
        cfg.players = 5;
        cfg.theta = {1.0};
        cfg.features = {{0.0}, {0.5}, {1.0}, {1.5}, {2.0}};
        cfg.shock_scale = 1.0;
        cfg.shock_seed = seed;
        FormationGame game(cfg);
        auto [terminal, converged] = best_response_dynamics(game, game.empty_graph(), 50);
        if (converged) CHECK(is_nash_stable(game, terminal));
    }
}

TEST_CASE("stability predicates agree with the brute-force oracle (N <= 5)") {
    Rng meta(20240809);
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const int n = 3 + static_cast<int>(seed % 3);
        FormationGameConfig cfg;
        cfg.players = n;
        cfg.theta = {1.0, -0.5};
        for (int i = 0; i < n; ++i) {
            cfg.features.push_back({meta.uniform(0.0, 2.0), meta.uniform(0.0, 2.0)});
        }
        cfg.friends_coeff = (seed % 2) ? 0.5 : 0.0;
        cfg.shock_scale = 0.5;
        cfg.shock_seed = seed;
        FormationGame game(cfg);

        net::Graph g = game.empty_graph();
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (meta.uniform01() < 0.4) g.add_edge(a, b);
            }
        }
        OracleGame og{n, &game};
        CHECK(is_nash_stable(game, g) == oracle_nash_stable(og, dense(g, n)));
        CHECK(is_pairwise_stable(game, g) == oracle_pairwise_stable(og, dense(g, n)));
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("remove_player: isolated, sole counterpart, star hub") {
    FormationGame game = uniform_game(4, 1.0);
    net::Graph g = game.empty_graph();
    g.add_edge(0, 1);

    auto [without3, g3] = game.without_player(3, g);
    CHECK(without3.player_count() == 3);
    CHECK(without3.payoff(0, g3) == doctest::Approx(game.payoff(0, g)));

    auto [without1, g1] = game.without_player(1, g);
    CHECK(without1.payoff(0, g1) == doctest::Approx(0.0));

    CHECK_THROWS_AS(game.without_player(9, g), NotFoundError);

    // 6-player star: removing the hub and re-settling raises fragmentation
    FormationGameConfig cfg;
    cfg.players = 6;
    cfg.theta = {1.0};
    cfg.features = {{1.0}, {0.0}, {0.0}, {0.0}, {0.0}, {0.0}};
    FormationGame star(cfg);
    auto [settled, conv] = best_response_dynamics(star, star.empty_graph(), 20);
    CHECK(conv);
    CHECK(net::fragmentation(settled) == doctest::Approx(0.0));
    auto [reduced, cut] = star.without_player(0, settled);
    auto [resettled, conv2] = best_response_dynamics(reduced, cut, 20);
    CHECK(conv2);
    CHECK(net::fragmentation(resettled) > 0.0);
}
