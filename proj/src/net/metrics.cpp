#include "casim/net/metrics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stack>

#include "casim/common/errors.hpp"

namespace casim::net {

namespace {

std::map<int, std::vector<int>> adjacency(const Graph& g) {
    std::map<int, std::vector<int>> adj;
    for (int n : g.nodes()) adj[n];
    for (const Edge& e : g.edges()) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
    }
    for (auto& [n, nbrs] : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    return adj;
}

}  // namespace

ComponentDecomposition components(const Graph& g) {
    auto adj = adjacency(g);
    std::set<int> unseen(g.nodes().begin(), g.nodes().end());
    ComponentDecomposition out;
    while (!unseen.empty()) {
        int root = *unseen.begin();  // smallest remaining id
        std::vector<int> comp;
        std::deque<int> queue{root};
        unseen.erase(root);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (int w : adj[v]) {
                if (unseen.erase(w)) queue.push_back(w);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.sizes.push_back(comp.size());
        out.components.push_back(std::move(comp));
    }
    return out;
}

double fragmentation(const Graph& g) {
    const double n = static_cast<double>(g.node_count());
    if (g.node_count() < 2) {
        throw Error("fragmentation requires at least 2 nodes");
    }
    double reachable_pairs = 0.0;
    for (std::size_t s : components(g).sizes) {
        reachable_pairs += static_cast<double>(s) * (static_cast<double>(s) - 1.0);
    }
    return 1.0 - reachable_pairs / (n * (n - 1.0));
}

double global_clustering(const Graph& g) {
    auto adj = adjacency(g);
    long long triples = 0;
    long long closed = 0;  // ordered closed triples; 3 * triangles counted twice
    for (const auto& [v, nbrs] : adj) {
        const long long d = static_cast<long long>(nbrs.size());
        triples += d * (d - 1) / 2;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                if (std::binary_search(adj[nbrs[i]].begin(), adj[nbrs[i]].end(), nbrs[j])) {
                    ++closed;
                }
            }
        }
    }
    if (triples == 0) return 0.0;
    // `closed` counts each triangle once per center vertex = 3 per triangle,
    // which is exactly the closed-triple count.
    return static_cast<double>(closed) / static_cast<double>(triples);
}

std::vector<std::pair<int, double>> betweenness_scores(const Graph& g) {
    auto adj = adjacency(g);
    const std::vector<int>& nodes = g.nodes();
    std::map<int, double> score;
    for (int v : nodes) score[v] = 0.0;

    // Brandes accumulation on the undirected, unweighted view.
    for (int s : nodes) {
        std::stack<int> order;
        std::map<int, std::vector<int>> pred;
        std::map<int, double> sigma;
        std::map<int, int> dist;
        for (int v : nodes) {
            sigma[v] = 0.0;
            dist[v] = -1;
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push(v);
            for (int w : adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    pred[w].push_back(v);
                }
            }
        }
        std::map<int, double> delta;
        for (int v : nodes) delta[v] = 0.0;
        while (!order.empty()) {
            int w = order.top();
            order.pop();
            for (int v : pred[w]) {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) score[w] += delta[w];
        }
    }
    std::vector<std::pair<int, double>> out;
    for (int v : nodes) out.emplace_back(v, score[v] / 2.0);  // each pair visited twice
    return out;
}

std::vector<int> betweenness_ranking(const Graph& g) {
    auto scores = betweenness_scores(g);
    std::stable_sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<int> out;
    for (const auto& [v, s] : scores) out.push_back(v);
    return out;
}

std::vector<std::pair<int, long long>> brokerage_scores(const Graph& g) {
    auto adj = adjacency(g);
    std::vector<std::pair<int, long long>> out;
    for (const auto& [v, nbrs] : adj) {
        long long holes = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                if (!std::binary_search(adj[nbrs[i]].begin(), adj[nbrs[i]].end(), nbrs[j])) {
                    ++holes;
                }
            }
        }
        out.emplace_back(v, holes);
    }
    return out;
}

std::vector<int> brokerage_ranking(const Graph& g) {
    auto scores = brokerage_scores(g);
    std::stable_sort(scores.begin(), scores.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<int> out;
    for (const auto& [v, s] : scores) out.push_back(v);
    return out;
}

}  // namespace casim::net
