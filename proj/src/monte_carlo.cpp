#include "intermediacy/monte_carlo.hpp"

#include <cmath>
#include <thread>

#include "intermediacy/errors.hpp"

namespace intermediacy {

namespace {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void check_config(double p, uint64_t replicates) {
    if (p <= 0.0 || p >= 1.0)
        throw Error(ErrorCode::InvalidArgument, "p must lie strictly between 0 and 1");
    if (replicates == 0)
        throw Error(ErrorCode::InvalidArgument, "need at least one replicate");
}

// Scratch buffers reused across replicates within one worker. Visit marks
// are epoch-stamped so they never need clearing.
struct Scratch {
    std::vector<uint64_t> fwd_stamp, bwd_stamp;
    std::vector<uint32_t> stack;

    explicit Scratch(size_t n) : fwd_stamp(n, ~0ULL), bwd_stamp(n, ~0ULL) {}
};

// Runs forward-from-s and backward-from-t probabilistic DFS for one
// replicate, bumping counts[v] for every node on an active s-t path.
void run_replicate(const StContext& ctx, double p, uint64_t seed, uint64_t rep,
                   Scratch& scratch, std::vector<uint64_t>& counts) {
    const Dag& dag = ctx.dag();
    scratch.stack.clear();
    scratch.stack.push_back(ctx.source());
    scratch.fwd_stamp[ctx.source()] = rep;
    while (!scratch.stack.empty()) {
        uint32_t v = scratch.stack.back();
        scratch.stack.pop_back();
        for (uint32_t e : dag.out_edges(v)) {
            uint32_t next = dag.edge(e).head;
            if (scratch.fwd_stamp[next] != rep && edge_active(seed, rep, e, p)) {
                scratch.fwd_stamp[next] = rep;
                scratch.stack.push_back(next);
            }
        }
    }
    if (scratch.fwd_stamp[ctx.target()] != rep) return;

    scratch.stack.push_back(ctx.target());
    scratch.bwd_stamp[ctx.target()] = rep;
    ++counts[ctx.target()];
    while (!scratch.stack.empty()) {
        uint32_t v = scratch.stack.back();
        scratch.stack.pop_back();
        for (uint32_t e : dag.in_edges(v)) {
            uint32_t prev = dag.edge(e).tail;
            if (scratch.bwd_stamp[prev] != rep && edge_active(seed, rep, e, p)) {
                scratch.bwd_stamp[prev] = rep;
                scratch.stack.push_back(prev);
                if (scratch.fwd_stamp[prev] == rep) ++counts[prev];
            }
        }
    }
}

} // namespace

bool edge_active(uint64_t seed, uint64_t replicate, uint32_t edge, double p) {
    uint64_t stream = splitmix64(seed ^ splitmix64(replicate));
    uint64_t h = splitmix64(stream ^ (0x632be59bd9b4e019ULL * (edge + 1)));
    return static_cast<double>(h >> 11) * 0x1.0p-53 < p;
}

ReplicateOutcome sample_replicate(const StContext& ctx, double p, uint64_t seed,
                                  uint64_t replicate) {
    check_config(p, 1);
    Scratch scratch(ctx.node_count());
    std::vector<uint64_t> counts(ctx.node_count(), 0);
    run_replicate(ctx, p, seed, replicate, scratch, counts);
    ReplicateOutcome out;
    for (uint32_t v = 0; v < counts.size(); ++v)
        if (counts[v]) out.active_nodes.push_back(v);
    return out;
}

IntermediacyScores estimate_intermediacy(const StContext& ctx, const SamplerConfig& config) {
    check_config(config.p, config.replicates);
    unsigned workers = std::max(1u, config.workers);
    workers = static_cast<unsigned>(
        std::min<uint64_t>(workers, config.replicates));

    std::vector<std::vector<uint64_t>> counts(workers,
                                              std::vector<uint64_t>(ctx.node_count(), 0));
    auto run = [&](unsigned w) {
        Scratch scratch(ctx.node_count());
        for (uint64_t rep = w; rep < config.replicates; rep += workers)
            run_replicate(ctx, config.p, config.seed, rep, scratch, counts[w]);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }
    for (unsigned w = 1; w < workers; ++w)
        for (size_t v = 0; v < ctx.node_count(); ++v) counts[0][v] += counts[w][v];

    IntermediacyScores scores;
    scores.method = IntermediacyScores::Method::MonteCarlo;
    scores.p = config.p;
    scores.samples = config.replicates;
    scores.seed = config.seed;
    scores.phi.resize(ctx.node_count());
    scores.stderrs.resize(ctx.node_count());
    const double n = static_cast<double>(config.replicates);
    for (size_t v = 0; v < ctx.node_count(); ++v) {
        double phi = static_cast<double>(counts[0][v]) / n;
        scores.phi[v] = phi;
        scores.stderrs[v] = std::sqrt(phi * (1.0 - phi) / n);
    }
    return scores;
}

Estimate estimate_st_probability(const StContext& ctx, double p, uint64_t samples,
                                 uint64_t seed, unsigned workers) {
    SamplerConfig config{p, samples, seed, workers};
    auto scores = estimate_intermediacy(ctx, config);
    return {scores.phi[ctx.source()], scores.stderrs[ctx.source()]};
}

} // namespace intermediacy
