#include "intermediacy/baselines.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <set>

#include "intermediacy/errors.hpp"

namespace intermediacy {

namespace {

std::vector<char> reachable_set(const Dag& dag, uint32_t start, bool forward) {
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

uint32_t pick_max_spc_edge(const Dag& dag, std::span<const uint32_t> candidates,
                           const PathStats& stats) {
    uint32_t best = candidates.front();
    for (uint32_t e : candidates.subspan(1)) {
        if (stats.edge_spc[e] > stats.edge_spc[best] ||
            (stats.edge_spc[e] == stats.edge_spc[best] &&
             dag.node(dag.edge(e).head).id < dag.node(dag.edge(best).head).id))
            best = e;
    }
    return best;
}

} // namespace

MainPathResult local_main_path(const StContext& ctx, const PathStats& stats) {
    const Dag& dag = ctx.dag();
    MainPathResult result;
    result.variant = MainPathResult::Variant::Local;
    uint32_t v = ctx.source();
    while (v != ctx.target()) {
        uint32_t e = pick_max_spc_edge(dag, dag.out_edges(v), stats);
        result.edges.push_back(e);
        result.spc_total += stats.edge_spc[e];
        v = dag.edge(e).head;
    }
    return result;
}

MainPathResult global_main_path(const StContext& ctx, const PathStats& stats) {
    const Dag& dag = ctx.dag();
    // best[v] = max total SPC of a v-t path; choice[v] = the first edge of
    // that path, ties broken by smallest head id.
    std::vector<BigInt> best(dag.node_count(), 0);
    std::vector<int64_t> choice(dag.node_count(), -1);
    auto topo = dag.topo_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        uint32_t v = *it;
        for (uint32_t e : dag.out_edges(v)) {
            uint32_t head = dag.edge(e).head;
            BigInt total = stats.edge_spc[e] + best[head];
            if (choice[v] < 0 || total > best[v] ||
                (total == best[v] &&
                 dag.node(head).id < dag.node(dag.edge(static_cast<uint32_t>(choice[v])).head).id)) {
                best[v] = total;
                choice[v] = e;
            }
        }
    }
    MainPathResult result;
    result.variant = MainPathResult::Variant::Global;
    result.spc_total = best[ctx.source()];
    for (uint32_t v = ctx.source(); v != ctx.target();) {
        uint32_t e = static_cast<uint32_t>(choice[v]);
        result.edges.push_back(e);
        v = dag.edge(e).head;
    }
    return result;
}

std::vector<double> expected_path_count(const StContext& ctx, double p) {
    if (p <= 0.0 || p >= 1.0)
        throw Error(ErrorCode::InvalidArgument, "p must lie strictly between 0 and 1");
    const Dag& dag = ctx.dag();
    const size_t n = dag.node_count();
    std::vector<double> w_sv(n, 0.0), w_vt(n, 0.0);
    w_sv[ctx.source()] = 1.0;
    auto topo = dag.topo_order();
    for (uint32_t v : topo)
        for (uint32_t e : dag.out_edges(v))
            w_sv[dag.edge(e).head] += w_sv[v] * p;
    w_vt[ctx.target()] = 1.0;
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        for (uint32_t e : dag.in_edges(*it))
            w_vt[dag.edge(e).tail] += w_vt[*it] * p;
    std::vector<double> epc(n);
    for (size_t v = 0; v < n; ++v) epc[v] = w_sv[v] * w_vt[v];
    return epc;
}

double resistance_through(const StContext& ctx, uint32_t v) {
    const Dag& dag = ctx.dag();
    auto from_s = reachable_set(dag, ctx.source(), true);
    auto to_t = reachable_set(dag, ctx.target(), false);
    auto from_v = reachable_set(dag, v, true);
    auto to_v = reachable_set(dag, v, false);

    // Keep edges on s-v paths or on v-t paths.
    std::vector<uint32_t> kept_edges;
    for (uint32_t e = 0; e < dag.edge_count(); ++e) {
        const Edge& edge = dag.edge(e);
        if ((from_s[edge.tail] && to_v[edge.head]) || (from_v[edge.tail] && to_t[edge.head]))
            kept_edges.push_back(e);
    }
    std::vector<int32_t> remap(dag.node_count(), -1);
    auto local = [&remap](uint32_t node, int32_t& next) {
        if (remap[node] < 0) remap[node] = next++;
        return remap[node];
    };
    int32_t next = 0;
    std::vector<std::pair<int32_t, int32_t>> resistors;
    for (uint32_t e : kept_edges)
        resistors.emplace_back(local(dag.edge(e).tail, next), local(dag.edge(e).head, next));
    const int32_t nn = next;
    const int32_t s = remap[ctx.source()];
    const int32_t t = remap[ctx.target()];

    // Effective s-t resistance of the unit-resistor network: ground t,
    // inject unit current at s, read the potential at s.
    if (nn < 2000) {
        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(nn, nn);
        for (auto [a, b] : resistors) {
            lap(a, a) += 1.0;
            lap(b, b) += 1.0;
            lap(a, b) -= 1.0;
            lap(b, a) -= 1.0;
        }
        Eigen::MatrixXd reduced(nn - 1, nn - 1);
        auto keep = [t](int32_t i) { return i < t ? i : i - 1; };
        for (int32_t i = 0; i < nn; ++i) {
            if (i == t) continue;
            for (int32_t j = 0; j < nn; ++j) {
                if (j == t) continue;
                reduced(keep(i), keep(j)) = lap(i, j);
            }
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nn - 1);
        rhs(keep(s)) = 1.0;
        Eigen::VectorXd x = reduced.ldlt().solve(rhs);
        return x(keep(s));
    }

    std::vector<Eigen::Triplet<double>> triplets;
    auto keep = [t](int32_t i) { return i < t ? i : i - 1; };
    for (auto [a, b] : resistors) {
        if (a != t && b != t) {
            triplets.emplace_back(keep(a), keep(b), -1.0);
            triplets.emplace_back(keep(b), keep(a), -1.0);
        }
        if (a != t) triplets.emplace_back(keep(a), keep(a), 1.0);
        if (b != t) triplets.emplace_back(keep(b), keep(b), 1.0);
    }
    Eigen::SparseMatrix<double> reduced(nn - 1, nn - 1);
    reduced.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nn - 1);
    rhs(keep(s)) = 1.0;
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-10);
    cg.compute(reduced);
    Eigen::VectorXd x = cg.solve(rhs);
    return x(keep(s));
}

Dag add_path(const Dag& dag, const std::string& u, const std::string& v, uint32_t length) {
    auto ui = dag.index_of(u);
    if (!ui) throw Error(ErrorCode::UnknownNode, "unknown node '" + u + "'");
    auto vi = dag.index_of(v);
    if (!vi) throw Error(ErrorCode::UnknownNode, "unknown node '" + v + "'");
    if (length == 0)
        throw Error(ErrorCode::InvalidArgument, "path length must be positive");
    if (reachable_set(dag, *vi, true)[*ui])
        throw Error(ErrorCode::WouldCreateCycle,
                    "a path from '" + v + "' to '" + u + "' already exists");

    std::vector<NodeRecord> nodes;
    nodes.reserve(dag.node_count() + length - 1);
    for (uint32_t i = 0; i < dag.node_count(); ++i) nodes.push_back(dag.node(i));
    std::vector<std::pair<std::string, std::string>> edges;
    edges.reserve(dag.edge_count() + length);
    for (const Edge& e : dag.edges())
        edges.emplace_back(dag.node(e.tail).id, dag.node(e.head).id);

    auto fresh_id = [&dag](const std::string& base) {
        std::string id = base;
        for (int suffix = 2; dag.index_of(id); ++suffix)
            id = base + "." + std::to_string(suffix);
        return id;
    };
    std::string prev = u;
    for (uint32_t i = 1; i < length; ++i) {
        std::string id = fresh_id(u + ">" + v + "#" + std::to_string(i));
        nodes.push_back({id, "", std::nullopt});
        edges.emplace_back(prev, id);
        prev = id;
    }
    edges.emplace_back(prev, v);
    return Dag::build(std::move(nodes), edges);
}

ContractionResult contract_paths(const Dag& dag, const std::string& u, const std::string& v) {
    auto ui = dag.index_of(u);
    if (!ui) throw Error(ErrorCode::UnknownNode, "unknown node '" + u + "'");
    auto vi = dag.index_of(v);
    if (!vi) throw Error(ErrorCode::UnknownNode, "unknown node '" + v + "'");

    auto from_u = reachable_set(dag, *ui, true);
    auto to_v = reachable_set(dag, *vi, false);
    if (!from_u[*vi])
        throw Error(ErrorCode::PreconditionViolated,
                    "no path from '" + u + "' to '" + v + "'");
    std::vector<char> in_set(dag.node_count());
    for (uint32_t i = 0; i < dag.node_count(); ++i) in_set[i] = from_u[i] && to_v[i];

    // Nodes in the set may touch the outside only via incoming edges of u
    // and outgoing edges of v.
    for (const Edge& e : dag.edges()) {
        if (in_set[e.tail] && !in_set[e.head] && e.tail != *vi)
            throw Error(ErrorCode::PreconditionViolated,
                        "node '" + dag.node(e.tail).id + "' has outside neighbor '" +
                            dag.node(e.head).id + "'");
        if (!in_set[e.tail] && in_set[e.head] && e.head != *ui)
            throw Error(ErrorCode::PreconditionViolated,
                        "node '" + dag.node(e.head).id + "' has outside neighbor '" +
                            dag.node(e.tail).id + "'");
    }

    std::string merged = u + "+" + v;
    while (dag.index_of(merged)) merged += "'";

    std::vector<NodeRecord> nodes;
    bool emitted = false;
    for (uint32_t i = 0; i < dag.node_count(); ++i) {
        if (in_set[i]) {
            if (!emitted) {
                nodes.push_back({merged, "", std::nullopt});
                emitted = true;
            }
        } else {
            nodes.push_back(dag.node(i));
        }
    }
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Edge& e : dag.edges()) {
        if (in_set[e.tail] && in_set[e.head]) continue;
        std::string tail = in_set[e.tail] ? merged : dag.node(e.tail).id;
        std::string head = in_set[e.head] ? merged : dag.node(e.head).id;
        if (seen.emplace(tail, head).second) edges.emplace_back(tail, head);
    }
    return {Dag::build(std::move(nodes), edges), merged};
}

} // namespace intermediacy
