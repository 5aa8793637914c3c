#include "intermediacy/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>

namespace intermediacy {

namespace {

// Splits one CSV record, honoring double quotes with "" escapes.
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace

Dag Dag::build(std::vector<NodeRecord> nodes,
               const std::vector<std::pair<std::string, std::string>>& edges,
               bool strict_duplicates) {
    Dag dag;
    dag.nodes_ = std::move(nodes);
    for (uint32_t i = 0; i < dag.nodes_.size(); ++i) {
        auto [it, inserted] = dag.index_.emplace(dag.nodes_[i].id, i);
        if (!inserted)
            throw Error(ErrorCode::InvalidArgument,
                        "duplicate node id '" + dag.nodes_[i].id + "'");
    }

    auto intern = [&dag](const std::string& id) -> uint32_t {
        auto it = dag.index_.find(id);
        if (it != dag.index_.end()) return it->second;
        uint32_t idx = static_cast<uint32_t>(dag.nodes_.size());
        dag.nodes_.push_back({id, "", std::nullopt});
        dag.index_.emplace(id, idx);
        return idx;
    };

    std::unordered_map<uint64_t, uint32_t> seen;
    for (const auto& [tail_id, head_id] : edges) {
        if (tail_id == head_id)
            throw Error(ErrorCode::SelfLoop, "self-loop on node '" + tail_id + "'");
        uint32_t tail = intern(tail_id);
        uint32_t head = intern(head_id);
        uint64_t key = (static_cast<uint64_t>(tail) << 32) | head;
        auto [it, inserted] = seen.emplace(key, static_cast<uint32_t>(dag.edges_.size()));
        if (!inserted) {
            if (strict_duplicates)
                throw Error(ErrorCode::DuplicateEdge,
                            "duplicate edge (" + tail_id + ", " + head_id + ")");
            dag.warnings_.push_back("collapsed duplicate edge (" + tail_id + ", " + head_id + ")");
            continue;
        }
        dag.edges_.push_back({tail, head});
    }

    dag.build_adjacency();
    dag.compute_topo_order();
    return dag;
}

void Dag::build_adjacency() {
    const size_t n = nodes_.size();
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        ++out_offsets_[e.tail + 1];
        ++in_offsets_[e.head + 1];
    }
    for (size_t i = 0; i < n; ++i) {
        out_offsets_[i + 1] += out_offsets_[i];
        in_offsets_[i + 1] += in_offsets_[i];
    }
    out_edge_ids_.resize(edges_.size());
    in_edge_ids_.resize(edges_.size());
    std::vector<uint32_t> out_pos(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<uint32_t> in_pos(in_offsets_.begin(), in_offsets_.end() - 1);
    for (uint32_t e = 0; e < edges_.size(); ++e) {
        out_edge_ids_[out_pos[edges_[e].tail]++] = e;
        in_edge_ids_[in_pos[edges_[e].head]++] = e;
    }
}

void Dag::compute_topo_order() {
    const size_t n = nodes_.size();
    std::vector<uint32_t> indeg(n, 0);
    for (const Edge& e : edges_) ++indeg[e.head];

    topo_order_.clear();
    topo_order_.reserve(n);
    std::deque<uint32_t> ready;
    for (uint32_t v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
        uint32_t v = ready.front();
        ready.pop_front();
        topo_order_.push_back(v);
        for (uint32_t e : out_edges(v))
            if (--indeg[edges_[e].head] == 0) ready.push_back(edges_[e].head);
    }
    if (topo_order_.size() != n) {
        // Name one edge inside the residual cycle.
        for (const Edge& e : edges_) {
            if (indeg[e.head] > 0 && indeg[e.tail] > 0)
                throw Error(ErrorCode::CycleDetected,
                            "cycle detected through edge (" + nodes_[e.tail].id + ", " +
                                nodes_[e.head].id + ")");
        }
        throw Error(ErrorCode::CycleDetected, "cycle detected");
    }
}

std::optional<uint32_t> Dag::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const uint32_t> Dag::out_edges(uint32_t i) const {
    return {out_edge_ids_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
}

std::span<const uint32_t> Dag::in_edges(uint32_t i) const {
    return {in_edge_ids_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
}

Dag read_dag(const std::string& edges_path, const std::string& nodes_path) {
    std::vector<NodeRecord> nodes;
    if (!nodes_path.empty()) {
        std::ifstream in(nodes_path);
        if (!in) throw Error(ErrorCode::IoError, "cannot open '" + nodes_path + "'");
        std::string line;
        if (!std::getline(in, line))
            throw Error(ErrorCode::ParseError, "empty node metadata file '" + nodes_path + "'");
        auto header = split_csv(line);
        if (header.empty() || header[0] != "id")
            throw Error(ErrorCode::ParseError,
                        "node metadata must start with header id,label,year");
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            auto fields = split_csv(line);
            NodeRecord rec;
            rec.id = fields[0];
            if (fields.size() > 1) rec.label = fields[1];
            if (fields.size() > 2 && !fields[2].empty()) {
                try {
                    rec.year = std::stoi(fields[2]);
                } catch (const std::exception&) {
                    throw Error(ErrorCode::ParseError,
                                "bad year '" + fields[2] + "' for node '" + rec.id + "'");
                }
            }
            nodes.push_back(std::move(rec));
        }
    }

    std::ifstream in(edges_path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + edges_path + "'");
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw Error(ErrorCode::ParseError, edges_path + ":" + std::to_string(lineno) +
                                                   ": expected citing<TAB>cited");
        edges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return Dag::build(std::move(nodes), edges);
}

} // namespace intermediacy
