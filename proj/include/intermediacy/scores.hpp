#ifndef intermediacy_scores_hpp
#define intermediacy_scores_hpp

#include <cstdint>
#include <vector>

namespace intermediacy {

// Per-node intermediacy values with estimator metadata.
struct IntermediacyScores {
    enum class Method { Exact, MonteCarlo };

    Method method = Method::Exact;
    double p = 0.0;
    std::vector<double> phi;       // indexed by closure node
    std::vector<double> stderrs;   // empty for exact scores
    uint64_t samples = 0;          // Monte Carlo only
    uint64_t seed = 0;             // Monte Carlo only
};

} // namespace intermediacy

#endif
