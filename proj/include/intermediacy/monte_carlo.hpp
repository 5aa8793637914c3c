#ifndef intermediacy_monte_carlo_hpp
#define intermediacy_monte_carlo_hpp

#include <cstdint>
#include <vector>

#include "intermediacy/closure.hpp"
#include "intermediacy/scores.hpp"

namespace intermediacy {

struct SamplerConfig {
    double p = 0.1;
    uint64_t replicates = 100000;
    uint64_t seed = 0;
    unsigned workers = 1;
};

// Nodes on at least one active source-target path in one sampled subgraph.
struct ReplicateOutcome {
    std::vector<uint32_t> active_nodes;
};

// Activation of edge e in replicate rep: a pure counter-based draw keyed by
// (seed, rep, e). Every traversal of a replicate sees one consistent
// assignment regardless of visit order or thread scheduling.
bool edge_active(uint64_t seed, uint64_t replicate, uint32_t edge, double p);

// One replicate: probabilistic DFS forward from s and backward from t over
// the same activation assignment; active nodes are the intersection.
ReplicateOutcome sample_replicate(const StContext& ctx, double p, uint64_t seed,
                                  uint64_t replicate);

// phi_v ~= fraction of replicates in which v is active, with binomial
// standard errors. Bit-identical for identical (ctx, p, N, seed) regardless
// of worker count.
IntermediacyScores estimate_intermediacy(const StContext& ctx, const SamplerConfig& config);

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

// Probability of the existence of an active source-target path (phi_s).
Estimate estimate_st_probability(const StContext& ctx, double p, uint64_t samples,
                                 uint64_t seed, unsigned workers = 1);

} // namespace intermediacy

#endif
