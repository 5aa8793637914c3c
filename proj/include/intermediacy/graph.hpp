#ifndef intermediacy_graph_hpp
#define intermediacy_graph_hpp

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "intermediacy/errors.hpp"

namespace intermediacy {

struct NodeRecord {
    std::string id;
    std::string label;
    std::optional<int> year;
};

struct Edge {
    uint32_t tail = 0; // citing node
    uint32_t head = 0; // cited node
};

// Immutable directed acyclic graph. Node indices are dense and follow the
// order of first appearance in the input; the topological order is computed
// and verified at construction.
class Dag {
public:
    // Nodes referenced by an edge but absent from `nodes` are declared
    // implicitly with an empty label. Duplicate edges are collapsed with a
    // warning unless `strict_duplicates` is set, in which case they raise
    // ErrorCode::DuplicateEdge.
    static Dag build(std::vector<NodeRecord> nodes,
                     const std::vector<std::pair<std::string, std::string>>& edges,
                     bool strict_duplicates = false);

    size_t node_count() const { return nodes_.size(); }
    size_t edge_count() const { return edges_.size(); }

    const NodeRecord& node(uint32_t i) const { return nodes_[i]; }
    std::optional<uint32_t> index_of(const std::string& id) const;

    std::span<const Edge> edges() const { return edges_; }
    const Edge& edge(uint32_t e) const { return edges_[e]; }

    // Edge indices incident to node i.
    std::span<const uint32_t> out_edges(uint32_t i) const;
    std::span<const uint32_t> in_edges(uint32_t i) const;

    uint32_t out_degree(uint32_t i) const { return static_cast<uint32_t>(out_edges(i).size()); }
    uint32_t in_degree(uint32_t i) const { return static_cast<uint32_t>(in_edges(i).size()); }

    std::span<const uint32_t> topo_order() const { return topo_order_; }

    // Ingestion warnings (collapsed duplicate edges).
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    Dag() = default;
    void build_adjacency();
    void compute_topo_order();

    std::vector<NodeRecord> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, uint32_t> index_;
    // CSR-style adjacency over edge indices.
    std::vector<uint32_t> out_offsets_, out_edge_ids_;
    std::vector<uint32_t> in_offsets_, in_edge_ids_;
    std::vector<uint32_t> topo_order_;
    std::vector<std::string> warnings_;
};

// Reads a `citing<TAB>cited` edge list (UTF-8, '#' comments, blank lines
// ignored) and an optional node metadata CSV with header id,label,year.
Dag read_dag(const std::string& edges_path, const std::string& nodes_path = {});

} // namespace intermediacy

#endif
