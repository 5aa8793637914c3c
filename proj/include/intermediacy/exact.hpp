#ifndef intermediacy_exact_hpp
#define intermediacy_exact_hpp

#include <cstdint>

#include "intermediacy/closure.hpp"
#include "intermediacy/scores.hpp"

namespace intermediacy {

inline constexpr uint32_t kDefaultMaxEdges = 25;

// Reachability probability and its complement, computed together by the
// same contraction-deletion recursion. The complement is accumulated
// directly from disconnected leaves, so it keeps full relative precision
// near p = 1 where 1 - reach would cancel.
struct ReachSplit {
    double reach = 0.0;
    double unreach = 1.0;
};

// Probability that at least one fully active path leads from u to v when
// each edge is independently active with probability p. Exponential in the
// number of edges on u-v paths; throws ErrorCode::TooLarge when that count
// exceeds max_edges.
ReachSplit reach_probability_split(const StContext& ctx, uint32_t u, uint32_t v,
                                   double p, uint32_t max_edges = kDefaultMaxEdges);

double reach_probability(const StContext& ctx, uint32_t u, uint32_t v, double p,
                         uint32_t max_edges = kDefaultMaxEdges);

// phi_v = Pr(active s-v path) * Pr(active v-t path) for every closure node.
IntermediacyScores exact_intermediacy(const StContext& ctx, double p,
                                      uint32_t max_edges = kDefaultMaxEdges);

// 1 - phi_v without cancellation; used where rankings near p = 1 matter.
std::vector<double> exact_intermediacy_complement(const StContext& ctx, double p,
                                                  uint32_t max_edges = kDefaultMaxEdges);

} // namespace intermediacy

#endif
