#ifndef intermediacy_path_stats_hpp
#define intermediacy_path_stats_hpp

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "intermediacy/closure.hpp"

namespace intermediacy {

using BigInt = boost::multiprecision::cpp_int;

// Deterministic combinatorial quantities of a closure. Path counts are
// arbitrary precision; large closures overflow 64-bit counts.
struct PathStats {
    std::vector<BigInt> paths_from_source;   // n_sv
    std::vector<BigInt> paths_to_target;     // n_vt
    std::vector<uint32_t> shortest_len;      // length of shortest s-t path through v
    std::vector<uint32_t> independent_paths; // max edge-disjoint s-t paths through v
    std::vector<BigInt> edge_spc;            // search path count per edge

    const BigInt& total_paths() const { return paths_to_target[source_index]; }
    uint32_t source_index = 0;
};

PathStats compute_path_stats(const StContext& ctx);

// Maximum number of pairwise edge-disjoint s-t paths through v, as
// min(maxflow(s,v), maxflow(v,t)) with unit edge capacities. In a DAG no
// edge can lie both on an s-v path and a v-t path, so the two flow
// problems are edge-disjoint and the minimum is exact.
uint32_t edge_independent_through(const StContext& ctx, uint32_t v);

// Unit-capacity max flow between two closure nodes (BFS augmenting paths).
uint32_t unit_max_flow(const StContext& ctx, uint32_t from, uint32_t to);

} // namespace intermediacy

#endif
