#include "intermediacy/exact.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "intermediacy/errors.hpp"

namespace intermediacy {

namespace {

// Working graph for the recursion: a plain edge list over node labels.
// Copies are cheap at the sizes where the exact algorithm applies.
struct WorkGraph {
    std::vector<std::pair<uint32_t, uint32_t>> edges;
    uint32_t n = 0;
};

// Keeps only edges lying on some u-v path: tail reachable from u and head
// reaching v. Returns false when v is unreachable from u.
bool prune_to_relevant(WorkGraph& g, uint32_t u, uint32_t v) {
    std::vector<char> fwd(g.n, 0), bwd(g.n, 0);
    std::vector<uint32_t> stack{u};
    fwd[u] = 1;
    while (!stack.empty()) {
        uint32_t x = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : g.edges)
            if (a == x && !fwd[b]) {
                fwd[b] = 1;
                stack.push_back(b);
            }
    }
    if (!fwd[v]) return false;
    stack.push_back(v);
    bwd[v] = 1;
    while (!stack.empty()) {
        uint32_t x = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : g.edges)
            if (b == x && !bwd[a]) {
                bwd[a] = 1;
                stack.push_back(a);
            }
    }
    std::erase_if(g.edges, [&](const auto& e) { return !fwd[e.first] || !bwd[e.second]; });
    return true;
}

// Contraction-deletion over one chosen out-edge of u. Both the reach
// probability and its complement are accumulated, the latter directly from
// disconnected leaves so it stays accurate near p = 1.
void recurse(WorkGraph g, uint32_t u, uint32_t v, double p, double weight,
             double& reach, double& unreach) {
    if (u == v) {
        reach += weight;
        return;
    }
    if (!prune_to_relevant(g, u, v)) {
        unreach += weight;
        return;
    }
    // Some out-edge of u exists after pruning (v is reachable and u != v).
    size_t pick = 0;
    while (g.edges[pick].first != u) ++pick;
    uint32_t head = g.edges[pick].second;

    // Delete branch.
    WorkGraph del = g;
    del.edges.erase(del.edges.begin() + static_cast<ptrdiff_t>(pick));
    recurse(std::move(del), u, v, p, weight * (1.0 - p), reach, unreach);

    // Contract branch: merge head into u and drop self-loops. Parallel
    // edges produced by the merge are distinct probabilistic edges and must
    // all be kept.
    WorkGraph con = std::move(g);
    for (auto& [a, b] : con.edges) {
        if (a == head) a = u;
        if (b == head) b = u;
    }
    std::erase_if(con.edges, [](const auto& e) { return e.first == e.second; });
    if (head == v) v = u;
    recurse(std::move(con), u, v, p, weight * p, reach, unreach);
}

} // namespace

ReachSplit reach_probability_split(const StContext& ctx, uint32_t u, uint32_t v,
                                   double p, uint32_t max_edges) {
    if (p <= 0.0 || p >= 1.0)
        throw Error(ErrorCode::InvalidArgument, "p must lie strictly between 0 and 1");

    WorkGraph g;
    g.n = static_cast<uint32_t>(ctx.dag().node_count());
    g.edges.reserve(ctx.dag().edge_count());
    for (const Edge& e : ctx.dag().edges()) g.edges.emplace_back(e.tail, e.head);

    if (u != v && !prune_to_relevant(g, u, v)) return {0.0, 1.0};
    if (g.edges.size() > max_edges)
        throw Error(ErrorCode::TooLarge,
                    std::to_string(g.edges.size()) + " relevant edges exceed the exact bound of " +
                        std::to_string(max_edges) + "; use the Monte Carlo estimator");

    ReachSplit split{0.0, 0.0};
    recurse(std::move(g), u, v, p, 1.0, split.reach, split.unreach);
    return split;
}

double reach_probability(const StContext& ctx, uint32_t u, uint32_t v, double p,
                         uint32_t max_edges) {
    return reach_probability_split(ctx, u, v, p, max_edges).reach;
}

IntermediacyScores exact_intermediacy(const StContext& ctx, double p, uint32_t max_edges) {
    if (ctx.edge_count() > max_edges)
        throw Error(ErrorCode::TooLarge,
                    "closure has " + std::to_string(ctx.edge_count()) +
                        " edges, above the exact bound of " + std::to_string(max_edges) +
                        "; use the Monte Carlo estimator");
    IntermediacyScores scores;
    scores.method = IntermediacyScores::Method::Exact;
    scores.p = p;
    scores.phi.resize(ctx.node_count());
    for (uint32_t v = 0; v < ctx.node_count(); ++v)
        scores.phi[v] = reach_probability(ctx, ctx.source(), v, p, max_edges) *
                        reach_probability(ctx, v, ctx.target(), p, max_edges);
    return scores;
}

std::vector<double> exact_intermediacy_complement(const StContext& ctx, double p,
                                                  uint32_t max_edges) {
    if (ctx.edge_count() > max_edges)
        throw Error(ErrorCode::TooLarge,
                    "closure has " + std::to_string(ctx.edge_count()) +
                        " edges, above the exact bound of " + std::to_string(max_edges) +
                        "; use the Monte Carlo estimator");
    std::vector<double> complement(ctx.node_count());
    for (uint32_t v = 0; v < ctx.node_count(); ++v) {
        auto sv = reach_probability_split(ctx, ctx.source(), v, p, max_edges);
        auto vt = reach_probability_split(ctx, v, ctx.target(), p, max_edges);
        // 1 - reach_sv * reach_vt without cancellation.
        complement[v] = sv.unreach + vt.unreach - sv.unreach * vt.unreach;
    }
    return complement;
}

} // namespace intermediacy
