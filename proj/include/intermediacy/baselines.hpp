#ifndef intermediacy_baselines_hpp
#define intermediacy_baselines_hpp

#include <cstdint>
#include <string>
#include <vector>

#include "intermediacy/closure.hpp"
#include "intermediacy/path_stats.hpp"

namespace intermediacy {

struct MainPathResult {
    enum class Variant { Local, Global };

    Variant variant = Variant::Local;
    std::vector<uint32_t> edges; // edge indices forming a directed s-t path
    BigInt spc_total;            // sum of SPC over traversed edges
};

// Greedy walk from s picking the out-edge with maximum SPC at every node;
// ties broken by smallest head node id.
MainPathResult local_main_path(const StContext& ctx, const PathStats& stats);

// The s-t path maximizing total SPC, by dynamic programming over the
// topological order; same tie-break.
MainPathResult global_main_path(const StContext& ctx, const PathStats& stats);

// Expected number of active s-t paths through each node,
// epc_v = W_sv(p) * W_vt(p) with W_uv(p) = sum over u-v paths of p^length.
std::vector<double> expected_path_count(const StContext& ctx, double p);

// Effective resistance between s and t over the unit-resistor network of
// s-t paths through v, on the undirected support of that subgraph.
double resistance_through(const StContext& ctx, uint32_t v);

// Adds a fresh path of `length` edges from u to v (length - 1 fresh nodes).
// Throws ErrorCode::WouldCreateCycle if a v-u path exists.
Dag add_path(const Dag& dag, const std::string& u, const std::string& v, uint32_t length);

struct ContractionResult {
    Dag dag;
    std::string merged_id; // id of the replacement node
};

// Contracts all nodes on u-v paths into one node, deduplicating boundary
// edges. Requires that those nodes have no neighbors outside the set except
// incoming neighbors of u and outgoing neighbors of v; violations throw
// ErrorCode::PreconditionViolated naming the offending node.
ContractionResult contract_paths(const Dag& dag, const std::string& u, const std::string& v);

} // namespace intermediacy

#endif
