#ifndef intermediacy_analysis_hpp
#define intermediacy_analysis_hpp

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "intermediacy/closure.hpp"
#include "intermediacy/exact.hpp"
#include "intermediacy/monte_carlo.hpp"
#include "intermediacy/scores.hpp"

namespace intermediacy {

// Percolation starting point p = 1/k = n/(2m).
double suggest_p(const StContext& ctx);

// The probability at which one direct edge is as strong as k indirect
// length-2 paths: the root of p = 1 - (1 - p^2)^k in (0, 1). Defined for
// k >= 2 (for k = 1 the only roots are the excluded endpoints).
double equivalence_threshold(unsigned k);

struct SweepPoint {
    double p = 0.0;
    double st_probability = 0.0;
    double stderr_ = 0.0; // 0 for exact points
    IntermediacyScores::Method method = IntermediacyScores::Method::Exact;
};

struct SweepResult {
    std::vector<SweepPoint> points;
};

// st-path probability over a p grid; exact when the closure fits under
// max_edges, Monte Carlo otherwise with per-point seeds derived from
// (config.seed, point index).
SweepResult p_sweep(const StContext& ctx, std::span<const double> grid,
                    const SamplerConfig& config, uint32_t max_edges = kDefaultMaxEdges);

// Empirical CDF over sorted unique values: (value, fraction <= value).
std::vector<std::pair<double, double>> score_cdf(std::span<const double> scores);

enum class CorrelationKind { Pearson, Spearman };

// NaN marks an undefined correlation (zero-variance input).
double correlation(std::span<const double> x, std::span<const double> y, CorrelationKind kind);

std::vector<std::vector<double>> correlation_matrix(
    const std::vector<std::vector<double>>& vectors, CorrelationKind kind);

// Average (fractional) ranks, 1-based; ties share their mean rank.
std::vector<double> average_ranks(std::span<const double> values);

struct RankingRow {
    uint32_t node = 0;
    std::string id;
    std::string label;
    std::vector<double> phi; // one per p column
    uint32_t citations = 0;
    uint32_t references = 0;
    bool endpoint = false; // source or target row
};

struct RankingTable {
    std::vector<double> p_values;
    size_t reference_column = 0;
    std::vector<RankingRow> rows; // source and target first, then ranked nodes
};

RankingTable ranking_table(const StContext& ctx,
                           const std::vector<IntermediacyScores>& scores_by_p,
                           double reference_p, size_t top_n);

} // namespace intermediacy

#endif
