#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>

#include "casim/common/errors.hpp"
#include "casim/common/rng.hpp"
#include "casim/net/generators.hpp"
#include "casim/net/graph.hpp"
#include "casim/net/metrics.hpp"

using namespace casim;
using namespace casim::net;

namespace {

Graph path3() {
    Graph g;
    g.add_node(0);
    g.add_node(1);
    g.add_node(2);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

Graph triangle_plus_isolate() {
    Graph g;
    for (int i = 0; i < 4; ++i) g.add_node(i);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    return g;
}

Graph star(int leaves) {
    Graph g;
    g.add_node(0);
    for (int i = 1; i <= leaves; ++i) {
        g.add_node(i);
        g.add_edge(0, i);
    }
    return g;
}

Graph random_graph(int n, double p, Rng& rng) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_node(i);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform01() < p) g.add_edge(i, j);
        }
    }
    return g;
}

/// Reachability oracle: Floyd-Warshall transitive closure on the
/// undirected view.
std::vector<std::vector<bool>> reachability(const Graph& g) {
    const auto& nodes = g.nodes();
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
    std::vector<std::vector<bool>> reach(nodes.size(),
                                         std::vector<bool>(nodes.size(), false));
    for (std::size_t i = 0; i < nodes.size(); ++i) reach[i][i] = true;
    for (const Edge& e : g.edges()) {
        reach[index[e.from]][index[e.to]] = true;
        reach[index[e.to]][index[e.from]] = true;
    }
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                if (reach[i][k] && reach[k][j]) reach[i][j] = true;
            }
        }
    }
    return reach;
}

double fragmentation_oracle(const Graph& g) {
    auto reach = reachability(g);
    const double n = static_cast<double>(g.node_count());
    double pairs = 0.0;
    for (std::size_t i = 0; i < reach.size(); ++i) {
        for (std::size_t j = 0; j < reach.size(); ++j) {
            if (i != j && reach[i][j]) pairs += 1.0;
        }
    }
    return 1.0 - pairs / (n * (n - 1.0));
}

/// Transitivity oracle: O(n^3) triple enumeration.
double clustering_oracle(const Graph& g) {
    const auto& nodes = g.nodes();
    long long triples = 0;
    long long closed = 0;
    for (int v : nodes) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                const int a = nodes[i];
                const int b = nodes[j];
                if (a == v || b == v) continue;
                if (g.adjacent(v, a) && g.adjacent(v, b)) {
                    ++triples;
                    if (g.adjacent(a, b)) ++closed;
                }
            }
        }
    }
    if (triples == 0) return 0.0;
    return static_cast<double>(closed) / static_cast<double>(triples);
}

/// Betweenness oracle: enumerate all shortest paths between every pair by
/// breadth-first layering and count path memberships.
std::map<int, double> betweenness_oracle(const Graph& g) {
    const auto& nodes = g.nodes();
    std::map<int, double> score;
    for (int v : nodes) score[v] = 0.0;

    auto bfs_dist = [&](int source) {
        std::map<int, int> dist;
        std::vector<int> frontier{source};
        dist[source] = 0;
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int v : frontier) {
                for (int w : g.neighbors(v)) {
                    if (!dist.count(w)) {
                        dist[w] = dist[v] + 1;
                        next.push_back(w);
                    }
                }
            }
            frontier = std::move(next);
        }
        return dist;
    };

    // count shortest paths s->t and those passing through v via DFS over the
    // BFS layer structure
    for (std::size_t si = 0; si < nodes.size(); ++si) {
        const int s = nodes[si];
        auto dist = bfs_dist(s);
        for (std::size_t ti = si + 1; ti < nodes.size(); ++ti) {
            const int t = nodes[ti];
            if (!dist.count(t)) continue;
            std::vector<std::vector<int>> paths;
            std::vector<int> current{t};
            // walk backwards from t to s along strictly decreasing distance
            std::function<void(int)> walk = [&](int v) {
                if (v == s) {
                    paths.push_back(current);
                    return;
                }
                for (int w : g.neighbors(v)) {
                    if (dist.count(w) && dist[w] == dist[v] - 1) {
                        current.push_back(w);
                        walk(w);
                        current.pop_back();
                    }
                }
            };
            walk(t);
            if (paths.empty()) continue;
            for (const auto& path : paths) {
                for (std::size_t k = 1; k + 1 < path.size(); ++k) {
                    score[path[k]] += 1.0 / static_cast<double>(paths.size());
                }
            }
        }
    }
    return score;
}

}  // namespace

TEST_CASE("components: empty, triangle+isolate, random vs oracle") {
    CHECK(components(Graph{}).components.empty());

    auto deco = components(triangle_plus_isolate());
    REQUIRE(deco.sizes.size() == 2);
    CHECK(deco.sizes[0] == 3);
    CHECK(deco.sizes[1] == 1);

    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(12, 0.15, rng);
        auto reach = reachability(g);
        auto deco2 = components(g);
        // same-component iff mutually reachable
        std::map<int, int> comp_of;
        for (std::size_t c = 0; c < deco2.components.size(); ++c) {
            for (int v : deco2.components[c]) comp_of[v] = static_cast<int>(c);
        }
        const auto& nodes = g.nodes();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = 0; j < nodes.size(); ++j) {
                CHECK((comp_of[nodes[i]] == comp_of[nodes[j]]) == bool(reach[i][j]));
            }
        }
    }
}

TEST_CASE("fragmentation: connected, edgeless, 3/2/1 split, oracle") {
    CHECK(fragmentation(triangle_plus_isolate().without_node(3)) == doctest::Approx(0.0));

    Graph isolated;
    for (int i = 0; i < 5; ++i) isolated.add_node(i);
    CHECK(fragmentation(isolated) == doctest::Approx(1.0));

    // components {3,2,1}: F = 1 - (6+2+0)/30
    Graph g;
    for (int i = 0; i < 6; ++i) g.add_node(i);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    CHECK(fragmentation(g) == doctest::Approx(1.0 - 8.0 / 30.0).epsilon(1e-12));

    Graph tiny;
    tiny.add_node(0);
    CHECK_THROWS_AS(fragmentation(tiny), Error);

    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Graph r = random_graph(10, 0.2, rng);
        CHECK(fragmentation(r) == doctest::Approx(fragmentation_oracle(r)).epsilon(1e-12));
    }
}

TEST_CASE("global clustering: triangle, star, random vs oracle") {
    CHECK(global_clustering(triangle_plus_isolate()) == doctest::Approx(1.0));
    CHECK(global_clustering(star(3)) == doctest::Approx(0.0));

    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(10, 0.3, rng);
        CHECK(global_clustering(g) == doctest::Approx(clustering_oracle(g)).epsilon(1e-12));
    }
}

TEST_CASE("betweenness: path, star, barbell vs path-enumeration oracle") {
    CHECK(betweenness_ranking(path3()).front() == 1);
    CHECK(betweenness_ranking(star(5)).front() == 0);

    // 9-node barbell: K4 - bridge - K4
    Graph barbell;
    for (int i = 0; i < 9; ++i) barbell.add_node(i);
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) barbell.add_edge(i, j);
    }
    for (int i = 5; i < 9; ++i) {
        for (int j = i + 1; j < 9; ++j) barbell.add_edge(i, j);
    }
    barbell.add_edge(3, 4);
    barbell.add_edge(4, 5);

    auto oracle = betweenness_oracle(barbell);
    for (const auto& [v, score] : betweenness_scores(barbell)) {
        CHECK(score == doctest::Approx(oracle[v]).epsilon(1e-9));
    }
    CHECK(betweenness_ranking(barbell).front() == 4);

    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_graph(9, 0.3, rng);
        auto oracle2 = betweenness_oracle(g);
        for (const auto& [v, score] : betweenness_scores(g)) {
            CHECK(score == doctest::Approx(oracle2[v]).epsilon(1e-9));
        }
    }
}

TEST_CASE("brokerage: closed triad, star hub, path") {
    auto triangle_scores = brokerage_scores(triangle_plus_isolate().without_node(3));
    for (const auto& [v, holes] : triangle_scores) CHECK(holes == 0);

    auto star_scores = brokerage_scores(star(6));
    for (const auto& [v, holes] : star_scores) {
        if (v == 0) CHECK(holes == 6 * 5 / 2);
        else CHECK(holes == 0);
    }

    auto path_scores = brokerage_scores(path3());
    std::map<int, long long> by_id(path_scores.begin(), path_scores.end());
    CHECK(by_id[0] == 0);
    CHECK(by_id[1] == 1);
    CHECK(by_id[2] == 0);
}

TEST_CASE("remove_node / remove_edge") {
    Graph g = triangle_plus_isolate();
    CHECK(fragmentation(g) > 0.0);
    Graph without = g.without_node(3);
    CHECK(fragmentation(without) == doctest::Approx(0.0));
    CHECK(g.node_count() == 4);  // input unmodified

    Graph s = star(4);
    Graph hubless = s.without_node(0);
    CHECK(hubless.node_count() == 4);
    CHECK(hubless.edge_count() == 0);
    CHECK(fragmentation(hubless) == doctest::Approx(1.0));

    Graph tree = path3();
    CHECK(components(tree.without_edge(0, 1)).sizes.size() == 2);

    CHECK_THROWS_AS(g.without_node(99), NotFoundError);
    CHECK_THROWS_AS(g.without_edge(0, 3), NotFoundError);
}

TEST_CASE("graph invariants: no self loops, no duplicates, endpoint checks") {
    Graph g;
    g.add_node(0);
    g.add_node(1);
    g.add_edge(0, 1);
    CHECK_THROWS_AS(g.add_edge(0, 0), Error);
    CHECK_THROWS_AS(g.add_edge(1, 0), Error);  // duplicate, reversed
    CHECK_THROWS_AS(g.add_edge(0, 9), NotFoundError);
}

TEST_CASE("metrics are invariant under node relabeling") {
    Rng rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_graph(9, 0.25, rng);
        // relabel v -> 100 - v
        Graph h;
        for (int v : g.nodes()) h.add_node(100 - v);
        for (const Edge& e : g.edges()) h.add_edge(100 - e.from, 100 - e.to);

        CHECK(fragmentation(g) == doctest::Approx(fragmentation(h)).epsilon(1e-12));
        CHECK(global_clustering(g) ==
              doctest::Approx(global_clustering(h)).epsilon(1e-12));

        std::map<int, double> bg;
        for (auto [v, s] : betweenness_scores(g)) bg[v] = s;
        for (auto [v, s] : betweenness_scores(h)) {
            CHECK(s == doctest::Approx(bg[100 - v]).epsilon(1e-9));
        }
        std::map<int, long long> rg;
        for (auto [v, s] : brokerage_scores(g)) rg[v] = s;
        for (auto [v, s] : brokerage_scores(h)) CHECK(s == rg[100 - v]);
    }
}

TEST_CASE("removal never increases the reachable-pair count") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_graph(10, 0.25, rng);
        auto pair_count = [](const Graph& gr) {
            double pairs = 0.0;
            for (std::size_t s : components(gr).sizes) {
                pairs += static_cast<double>(s) * (static_cast<double>(s) - 1.0);
            }
            return pairs;
        };
        const double before = pair_count(g);
        for (int v : g.nodes()) {
            CHECK(pair_count(g.without_node(v)) <= before);
        }
    }
}

TEST_CASE("edge list parsing: comments, weights, attribute CSV") {
    Graph g = Graph::from_edge_list("# demo\n0 1\n1 2 2.5\n\n# trailing comment\n");
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.edges()[1].weight == doctest::Approx(2.5));

    g.load_attributes_csv("0,1.5,2.0\n7,0.5\n");
    REQUIRE(g.attributes(0) != nullptr);
    CHECK((*g.attributes(0))[0] == doctest::Approx(1.5));
    CHECK(g.has_node(7));  // attribute rows may introduce isolated nodes

    CHECK_THROWS_AS(Graph::from_edge_list("0 not_a_number\n"), Error);
}

TEST_CASE("generators: BA degree sum and connectivity, ER determinism") {
    Rng rng(5);
    Graph ba = barabasi_albert(30, 2, rng);
    CHECK(ba.node_count() == 30);
    CHECK(ba.edge_count() == 2 * 28);
    CHECK(components(ba).sizes.size() == 1);

    Rng r1(9);
    Rng r2(9);
    Graph a = erdos_renyi(12, 0.3, r1);
    Graph b = erdos_renyi(12, 0.3, r2);
    CHECK(a.edge_count() == b.edge_count());
}
