#include "casim/net/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "casim/common/errors.hpp"
#include "casim/common/text.hpp"

namespace casim::net {

void Graph::add_node(int id) {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it != nodes_.end() && *it == id) return;
    nodes_.insert(it, id);
}

void Graph::add_node(int id, std::vector<double> attributes) {
    add_node(id);
    attributes_[id] = std::move(attributes);
}

void Graph::add_edge(int from, int to, double weight, bool directed) {
    if (from == to) throw Error("self-loop rejected: node " + std::to_string(from));
    if (!has_node(from)) throw NotFoundError("edge endpoint missing: " + std::to_string(from));
    if (!has_node(to)) throw NotFoundError("edge endpoint missing: " + std::to_string(to));
    for (const Edge& e : edges_) {
        bool same = (e.from == from && e.to == to) ||
                    (!e.directed && !directed && e.from == to && e.to == from);
        if (same) {
            throw Error("duplicate edge rejected: " + std::to_string(from) + "-" +
                        std::to_string(to));
        }
    }
    edges_.push_back(Edge{from, to, weight, directed});
}

bool Graph::has_node(int id) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

bool Graph::has_edge(int from, int to) const {
    for (const Edge& e : edges_) {
        if (e.from == from && e.to == to) return true;
        if (!e.directed && e.from == to && e.to == from) return true;
    }
    return false;
}

bool Graph::adjacent(int u, int v) const {
    for (const Edge& e : edges_) {
        if ((e.from == u && e.to == v) || (e.from == v && e.to == u)) return true;
    }
    return false;
}

std::vector<int> Graph::neighbors(int id) const {
    std::vector<int> out;
    for (const Edge& e : edges_) {
        if (e.from == id) out.push_back(e.to);
        else if (e.to == id) out.push_back(e.from);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

const std::vector<double>* Graph::attributes(int id) const {
    auto it = attributes_.find(id);
    return it == attributes_.end() ? nullptr : &it->second;
}

void Graph::set_attributes(int id, std::vector<double> attributes) {
    if (!has_node(id)) throw NotFoundError("no such node: " + std::to_string(id));
    attributes_[id] = std::move(attributes);
}

Graph Graph::without_node(int id) const {
    if (!has_node(id)) throw NotFoundError("no such node: " + std::to_string(id));
    Graph out;
    for (int n : nodes_) {
        if (n != id) out.add_node(n);
    }
    for (const auto& [n, attrs] : attributes_) {
        if (n != id) out.attributes_[n] = attrs;
    }
    for (const Edge& e : edges_) {
        if (e.from != id && e.to != id) out.edges_.push_back(e);
    }
    return out;
}

Graph Graph::without_edge(int from, int to) const {
    Graph out = *this;
    for (auto it = out.edges_.begin(); it != out.edges_.end(); ++it) {
        bool match = (it->from == from && it->to == to) ||
                     (!it->directed && it->from == to && it->to == from);
        if (match) {
            out.edges_.erase(it);
            return out;
        }
    }
    throw NotFoundError("no such edge: " + std::to_string(from) + "-" + std::to_string(to));
}

Graph Graph::from_edge_list(std::string_view text) {
    Graph g;
    int line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream iss{std::string(line)};
        int from, to;
        if (!(iss >> from >> to)) {
            throw Error("edge list parse error at line " + std::to_string(line_no));
        }
        double weight = 1.0;
        iss >> weight;
        g.add_node(from);
        g.add_node(to);
        g.add_edge(from, to, weight);
    }
    return g;
}

void Graph::load_attributes_csv(std::string_view text) {
    int line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        auto fields = split(line, ',');
        if (fields.empty()) continue;
        int id = 0;
        auto idf = trim(fields[0]);
        auto [p, ec] = std::from_chars(idf.data(), idf.data() + idf.size(), id);
        if (ec != std::errc{}) {
            throw Error("attribute CSV parse error at line " + std::to_string(line_no));
        }
        std::vector<double> attrs;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            attrs.push_back(std::stod(std::string(trim(fields[i]))));
        }
        add_node(id);
        attributes_[id] = std::move(attrs);
    }
}

Graph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open edge list: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return Graph::from_edge_list(ss.str());
}

void read_node_attributes_file(Graph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open attribute CSV: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    g.load_attributes_csv(ss.str());
}

}  // namespace casim::net
