#pragma once

#include <map>
#include <string_view>
#include <vector>

namespace casim::net {

struct Edge {
    int from = 0;
    int to = 0;
    double weight = 1.0;
    bool directed = false;
};

/// Weighted graph with stable integer node ids and optional per-node
/// attribute vectors. Value-semantic: node/edge removal returns a new
/// graph, so attack rollouts can branch without aliasing.
///
/// Invariants: no self-loops, no duplicate edges (same endpoints and
/// direction; undirected edges match either orientation), edge endpoints
/// must exist.
class Graph {
public:
    Graph() = default;

    void add_node(int id);
    void add_node(int id, std::vector<double> attributes);
    void add_edge(int from, int to, double weight = 1.0, bool directed = false);

    bool has_node(int id) const;
    /// Directed edges match (from, to) exactly; undirected match either way.
    bool has_edge(int from, int to) const;
    /// True if u and v are adjacent in the undirected view.
    bool adjacent(int u, int v) const;

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    /// Node ids in ascending order.
    const std::vector<int>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }

    /// Neighbors in the undirected view, ascending.
    std::vector<int> neighbors(int id) const;

    /// Attribute vector of a node, or nullptr if none was set.
    const std::vector<double>* attributes(int id) const;
    void set_attributes(int id, std::vector<double> attributes);

    /// Copy without the node and its incident edges. Missing id -> NotFoundError.
    Graph without_node(int id) const;
    /// Copy without the edge. Missing edge -> NotFoundError.
    Graph without_edge(int from, int to) const;

    /// Parse the edge-list text format: one `from_id to_id [weight]` per
    /// line, `#` starts a comment. All edges undirected.
    static Graph from_edge_list(std::string_view text);

    /// Add node attributes from CSV text `node_id,f1,f2,...`. Ids not yet
    /// present are added as isolated nodes.
    void load_attributes_csv(std::string_view text);

private:
    std::vector<int> nodes_;  // sorted ascending
    std::vector<Edge> edges_;
    std::map<int, std::vector<double>> attributes_;
};

Graph read_edge_list_file(const std::string& path);
void read_node_attributes_file(Graph& g, const std::string& path);

}  // namespace casim::net
