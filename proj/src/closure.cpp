#include "intermediacy/closure.hpp"

#include <vector>

namespace intermediacy {

namespace {

std::vector<char> reachable(const Dag& dag, uint32_t start, bool forward) {
    std::vector<char> seen(dag.node_count(), 0);
    std::vector<uint32_t> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
        uint32_t v = stack.back();
        stack.pop_back();
        auto edges = forward ? dag.out_edges(v) : dag.in_edges(v);
        for (uint32_t e : edges) {
            uint32_t next = forward ? dag.edge(e).head : dag.edge(e).tail;
            if (!seen[next]) {
                seen[next] = 1;
                stack.push_back(next);
            }
        }
    }
    return seen;
}

} // namespace

StContext StContext::extract(const Dag& dag, const std::string& source_id,
                             const std::string& target_id) {
    auto s = dag.index_of(source_id);
    if (!s) throw Error(ErrorCode::UnknownNode, "unknown source id '" + source_id + "'");
    auto t = dag.index_of(target_id);
    if (!t) throw Error(ErrorCode::UnknownNode, "unknown target id '" + target_id + "'");
    if (*s == *t)
        throw Error(ErrorCode::InvalidArgument,
                    "source and target must be distinct ('" + source_id + "')");

    auto from_s = reachable(dag, *s, true);
    auto to_t = reachable(dag, *t, false);
    if (!from_s[*t])
        throw Error(ErrorCode::NoSourceTargetPath,
                    "no path from '" + source_id + "' to '" + target_id + "'");

    std::vector<NodeRecord> nodes;
    std::vector<char> keep(dag.node_count(), 0);
    for (uint32_t v = 0; v < dag.node_count(); ++v) {
        if (from_s[v] && to_t[v]) {
            keep[v] = 1;
            nodes.push_back(dag.node(v));
        }
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Edge& e : dag.edges())
        if (keep[e.tail] && keep[e.head])
            edges.emplace_back(dag.node(e.tail).id, dag.node(e.head).id);

    Dag closure = Dag::build(std::move(nodes), edges);
    uint32_t src = *closure.index_of(source_id);
    uint32_t tgt = *closure.index_of(target_id);
    return StContext(std::move(closure), src, tgt);
}

} // namespace intermediacy
