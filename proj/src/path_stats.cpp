#include "intermediacy/path_stats.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace intermediacy {

namespace {

constexpr uint32_t kUnreached = std::numeric_limits<uint32_t>::max();

std::vector<uint32_t> bfs_distances(const Dag& dag, uint32_t start, bool forward) {
    std::vector<uint32_t> dist(dag.node_count(), kUnreached);
    std::deque<uint32_t> queue{start};
    dist[start] = 0;
    while (!queue.empty()) {
        uint32_t v = queue.front();
        queue.pop_front();
        auto edges = forward ? dag.out_edges(v) : dag.in_edges(v);
        for (uint32_t e : edges) {
            uint32_t next = forward ? dag.edge(e).head : dag.edge(e).tail;
            if (dist[next] == kUnreached) {
                dist[next] = dist[v] + 1;
                queue.push_back(next);
            }
        }
    }
    return dist;
}

} // namespace

uint32_t unit_max_flow(const StContext& ctx, uint32_t from, uint32_t to) {
    if (from == to) return std::numeric_limits<uint32_t>::max();
    const Dag& dag = ctx.dag();
    // Residual state per edge: 0 = forward available, 1 = saturated
    // (residual arc points backward).
    std::vector<char> used(dag.edge_count(), 0);
    uint32_t flow = 0;
    std::vector<int64_t> parent_edge(dag.node_count());
    std::vector<char> parent_dir(dag.node_count());
    while (true) {
        std::fill(parent_edge.begin(), parent_edge.end(), -1);
        std::deque<uint32_t> queue{from};
        parent_edge[from] = -2;
        bool found = false;
        while (!queue.empty() && !found) {
            uint32_t v = queue.front();
            queue.pop_front();
            for (uint32_t e : dag.out_edges(v)) {
                uint32_t next = dag.edge(e).head;
                if (!used[e] && parent_edge[next] == -1) {
                    parent_edge[next] = e;
                    parent_dir[next] = 0;
                    if (next == to) { found = true; break; }
                    queue.push_back(next);
                }
            }
            if (found) break;
            for (uint32_t e : dag.in_edges(v)) {
                uint32_t prev = dag.edge(e).tail;
                if (used[e] && parent_edge[prev] == -1) {
                    parent_edge[prev] = e;
                    parent_dir[prev] = 1;
                    queue.push_back(prev);
                }
            }
        }
        if (!found) break;
        uint32_t v = to;
        while (v != from) {
            uint32_t e = static_cast<uint32_t>(parent_edge[v]);
            if (parent_dir[v] == 0) {
                used[e] = 1;
                v = dag.edge(e).tail;
            } else {
                used[e] = 0;
                v = dag.edge(e).head;
            }
        }
        ++flow;
    }
    return flow;
}

uint32_t edge_independent_through(const StContext& ctx, uint32_t v) {
    if (v == ctx.source() || v == ctx.target())
        return unit_max_flow(ctx, ctx.source(), ctx.target());
    return std::min(unit_max_flow(ctx, ctx.source(), v), unit_max_flow(ctx, v, ctx.target()));
}

PathStats compute_path_stats(const StContext& ctx) {
    const Dag& dag = ctx.dag();
    const size_t n = dag.node_count();
    PathStats stats;
    stats.source_index = ctx.source();
    stats.paths_from_source.assign(n, 0);
    stats.paths_to_target.assign(n, 0);

    stats.paths_from_source[ctx.source()] = 1;
    for (uint32_t v : dag.topo_order())
        for (uint32_t e : dag.out_edges(v))
            stats.paths_from_source[dag.edge(e).head] += stats.paths_from_source[v];

    stats.paths_to_target[ctx.target()] = 1;
    auto topo = dag.topo_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        for (uint32_t e : dag.in_edges(*it))
            stats.paths_to_target[dag.edge(e).tail] += stats.paths_to_target[*it];

    auto dist_s = bfs_distances(dag, ctx.source(), true);
    auto dist_t = bfs_distances(dag, ctx.target(), false);
    stats.shortest_len.resize(n);
    for (uint32_t v = 0; v < n; ++v)
        stats.shortest_len[v] = dist_s[v] + dist_t[v];

    stats.edge_spc.resize(dag.edge_count());
    for (uint32_t e = 0; e < dag.edge_count(); ++e)
        stats.edge_spc[e] = stats.paths_from_source[dag.edge(e).tail] *
                            stats.paths_to_target[dag.edge(e).head];

    stats.independent_paths.resize(n);
    for (uint32_t v = 0; v < n; ++v)
        stats.independent_paths[v] = edge_independent_through(ctx, v);

    return stats;
}

} // namespace intermediacy
