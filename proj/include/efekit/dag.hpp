#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace efekit {

/// Directed acyclic graph over named vertices.
/// Invariants, enforced at construction: endpoints declared, no duplicate
/// nodes or edges, acyclic (checked by topological sort).
class Dag {
public:
    Dag(std::vector<std::string> nodes,
        std::vector<std::pair<std::string, std::string>> edges);

    std::size_t size() const { return nodes_.size(); }
    const std::vector<std::string>& nodes() const { return nodes_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
        return edges_;
    }

    /// Index of a named vertex. Throws UnknownVertexError.
    std::size_t index(const std::string& name) const;
    const std::string& name(std::size_t v) const { return nodes_[v]; }

    bool has_edge(std::size_t parent, std::size_t child) const;
    const std::vector<std::size_t>& parents(std::size_t v) const {
        return parents_[v];
    }
    const std::vector<std::size_t>& children(std::size_t v) const {
        return children_[v];
    }

    /// Undirected neighbors (union of parents and children), deduplicated.
    std::vector<std::size_t> neighbors(std::size_t v) const;

    /// One valid topological order.
    std::vector<std::size_t> topological_order() const;

    /// Mask of proper descendants of v (v itself excluded).
    std::vector<bool> proper_descendants(std::size_t v) const;

private:
    std::vector<std::string> nodes_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::vector<std::size_t>> parents_;
    std::vector<std::vector<std::size_t>> children_;
};

/// Reads a DAG from a JSON file with keys "nodes" and "edges".
Dag load_dag(const std::string& path);

} // namespace efekit
