#include "casim/net/generators.hpp"

#include <set>

#include "casim/common/errors.hpp"

namespace casim::net {

Graph barabasi_albert(int n, int m, Rng& rng) {
    if (m < 1 || n <= m) throw Error("barabasi_albert requires 1 <= m < n");
    Graph g;
    for (int i = 0; i < n; ++i) g.add_node(i);

    // repeated_nodes holds each node once per incident edge endpoint, so a
    // uniform draw from it is degree-proportional.
    std::vector<int> repeated;
    std::vector<int> targets;
    for (int i = 0; i < m; ++i) targets.push_back(i);

    for (int v = m; v < n; ++v) {
        for (int t : targets) {
            g.add_edge(v, t);
            repeated.push_back(v);
            repeated.push_back(t);
        }
        std::set<int> next;
        while (static_cast<int>(next.size()) < m) {
            next.insert(repeated[rng.uniform_index(repeated.size())]);
        }
        targets.assign(next.begin(), next.end());
    }
    return g;
}

Graph erdos_renyi(int n, double p, Rng& rng) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_node(i);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.uniform01() < p) g.add_edge(i, j);
        }
    }
    return g;
}

}  // namespace casim::net
