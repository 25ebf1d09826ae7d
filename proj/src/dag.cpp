#include "efekit/dag.hpp"

#include "efekit/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace efekit {

Dag::Dag(std::vector<std::string> nodes,
         std::vector<std::pair<std::string, std::string>> edges)
    : nodes_(std::move(nodes)) {
    std::set<std::string> seen;
    for (const std::string& n : nodes_) {
        if (!seen.insert(n).second) {
            throw InvalidDagError("duplicate node '" + n + "'");
        }
    }

    parents_.resize(nodes_.size());
    children_.resize(nodes_.size());
    std::set<std::pair<std::size_t, std::size_t>> edge_set;
    for (const auto& [parent, child] : edges) {
        std::size_t p = index(parent);
        std::size_t c = index(child);
        if (p == c) {
            throw InvalidDagError("self-loop on '" + parent + "'");
        }
        if (!edge_set.insert({p, c}).second) {
            throw InvalidDagError("duplicate edge " + parent + " -> " + child);
        }
        edges_.emplace_back(p, c);
        parents_[c].push_back(p);
        children_[p].push_back(c);
    }

    topological_order();
}

std::size_t Dag::index(const std::string& name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (nodes_[i] == name) return i;
    }
    throw UnknownVertexError("unknown vertex '" + name + "'");
}

bool Dag::has_edge(std::size_t parent, std::size_t child) const {
    const auto& kids = children_[parent];
    return std::find(kids.begin(), kids.end(), child) != kids.end();
}

std::vector<std::size_t> Dag::neighbors(std::size_t v) const {
    std::vector<std::size_t> out = parents_[v];
    for (std::size_t c : children_[v]) {
        if (std::find(out.begin(), out.end(), c) == out.end()) {
            out.push_back(c);
        }
    }
    return out;
}

std::vector<std::size_t> Dag::topological_order() const {
    std::vector<std::size_t> in_degree(nodes_.size(), 0);
    for (const auto& [p, c] : edges_) {
        (void)p;
        ++in_degree[c];
    }
    std::queue<std::size_t> ready;
    for (std::size_t v = 0; v < nodes_.size(); ++v) {
        if (in_degree[v] == 0) ready.push(v);
    }
    std::vector<std::size_t> order;
    order.reserve(nodes_.size());
    while (!ready.empty()) {
        std::size_t v = ready.front();
        ready.pop();
        order.push_back(v);
        for (std::size_t c : children_[v]) {
            if (--in_degree[c] == 0) ready.push(c);
        }
    }
    if (order.size() != nodes_.size()) {
        throw InvalidDagError("graph contains a cycle");
    }
    return order;
}

std::vector<bool> Dag::proper_descendants(std::size_t v) const {
    std::vector<bool> mark(nodes_.size(), false);
    std::queue<std::size_t> frontier;
    frontier.push(v);
    while (!frontier.empty()) {
        std::size_t u = frontier.front();
        frontier.pop();
        for (std::size_t c : children_[u]) {
            if (!mark[c]) {
                mark[c] = true;
                frontier.push(c);
            }
        }
    }
    mark[v] = false;
    return mark;
}

Dag load_dag(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open DAG file '" + path + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("DAG file '" + path + "': " + e.what());
    }
    if (!doc.contains("nodes") || !doc.contains("edges")) {
        throw ParseError("DAG file '" + path + "' needs keys nodes, edges");
    }
    try {
        std::vector<std::string> nodes =
            doc.at("nodes").get<std::vector<std::string>>();
        std::vector<std::pair<std::string, std::string>> edges;
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 2) {
                throw ParseError("DAG edge must be a [parent, child] pair");
            }
            edges.emplace_back(e[0].get<std::string>(),
                               e[1].get<std::string>());
        }
        return Dag(std::move(nodes), std::move(edges));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("DAG file '" + path + "': " + e.what());
    }
}

} // namespace efekit
