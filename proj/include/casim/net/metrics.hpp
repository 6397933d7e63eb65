#pragma once

#include <vector>

#include "casim/net/graph.hpp"

namespace casim::net {

/// Weakly-connected components (edge direction ignored).
struct ComponentDecomposition {
    /// Components ordered by smallest member id; members ascending.
    std::vector<std::vector<int>> components;
    /// Component sizes, same order.
    std::vector<std::size_t> sizes;
};

ComponentDecomposition components(const Graph& g);

/// Fragmentation F = 1 - sum_k s_k(s_k - 1) / (n(n - 1)).
/// 0 for a connected graph, 1 for an edgeless one. Requires n >= 2.
double fragmentation(const Graph& g);

/// Global clustering coefficient (transitivity) of the undirected view:
/// 3 * triangles / connected triples. 0 when no triples exist.
double global_clustering(const Graph& g);

/// Nodes by exact shortest-path betweenness (Brandes), descending,
/// ties broken by ascending node id.
std::vector<int> betweenness_ranking(const Graph& g);
/// Betweenness score per node (undirected, unweighted).
std::vector<std::pair<int, double>> betweenness_scores(const Graph& g);

/// Brokerage of a node: number of unordered neighbor pairs that are not
/// adjacent to each other (structural holes spanned).
std::vector<int> brokerage_ranking(const Graph& g);
std::vector<std::pair<int, long long>> brokerage_scores(const Graph& g);

}  // namespace casim::net
