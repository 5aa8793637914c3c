#include "intermediacy/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "intermediacy/errors.hpp"

namespace intermediacy {

double suggest_p(const StContext& ctx) {
    return static_cast<double>(ctx.node_count()) / (2.0 * static_cast<double>(ctx.edge_count()));
}

double equivalence_threshold(unsigned k) {
    if (k < 2)
        throw Error(ErrorCode::InvalidArgument,
                    "equivalence threshold needs k >= 2 indirect paths");
    // f(p) = 1 - (1 - p^2)^k - p is negative near 0 and positive near 1;
    // bisect to the sign change.
    auto f = [k](double p) { return 1.0 - std::pow(1.0 - p * p, k) - p; };
    double lo = 1e-9, hi = 1.0 - 1e-9;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SweepResult p_sweep(const StContext& ctx, std::span<const double> grid,
                    const SamplerConfig& config, uint32_t max_edges) {
    SweepResult result;
    result.points.reserve(grid.size());
    const bool exact = ctx.edge_count() <= max_edges;
    for (size_t i = 0; i < grid.size(); ++i) {
        double p = grid[i];
        if (p <= 0.0 || p >= 1.0)
            throw Error(ErrorCode::InvalidArgument, "grid values must lie in (0, 1)");
        SweepPoint point;
        point.p = p;
        if (exact) {
            point.st_probability = reach_probability(ctx, ctx.source(), ctx.target(), p, max_edges);
            point.method = IntermediacyScores::Method::Exact;
        } else {
            auto est = estimate_st_probability(ctx, p, config.replicates,
                                               config.seed + 0x9e3779b97f4a7c15ULL * i,
                                               config.workers);
            point.st_probability = est.value;
            point.stderr_ = est.stderr_;
            point.method = IntermediacyScores::Method::MonteCarlo;
        }
        result.points.push_back(point);
    }
    return result;
}

std::vector<std::pair<double, double>> score_cdf(std::span<const double> scores) {
    if (scores.empty())
        throw Error(ErrorCode::InvalidArgument, "cannot build a CDF over no scores");
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> cdf;
    const double n = static_cast<double>(sorted.size());
    for (size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
        cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
    }
    return cdf;
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<size_t> order(values.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&values](size_t a, size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (size_t i = 0; i < order.size();) {
        size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

namespace {

double pearson(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

double correlation(std::span<const double> x, std::span<const double> y, CorrelationKind kind) {
    if (x.size() != y.size())
        throw Error(ErrorCode::InvalidArgument, "correlation inputs must have equal length");
    if (x.size() < 3)
        throw Error(ErrorCode::InvalidArgument, "correlation needs at least 3 observations");
    if (kind == CorrelationKind::Pearson) return pearson(x, y);
    auto rx = average_ranks(x);
    auto ry = average_ranks(y);
    return pearson(rx, ry);
}

std::vector<std::vector<double>> correlation_matrix(
    const std::vector<std::vector<double>>& vectors, CorrelationKind kind) {
    const size_t k = vectors.size();
    std::vector<std::vector<double>> matrix(k, std::vector<double>(k, 1.0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            matrix[i][j] = matrix[j][i] = correlation(vectors[i], vectors[j], kind);
    return matrix;
}

RankingTable ranking_table(const StContext& ctx,
                           const std::vector<IntermediacyScores>& scores_by_p,
                           double reference_p, size_t top_n) {
    RankingTable table;
    size_t ref = scores_by_p.size();
    for (size_t i = 0; i < scores_by_p.size(); ++i) {
        table.p_values.push_back(scores_by_p[i].p);
        if (scores_by_p[i].p == reference_p) ref = i;
    }
    if (ref == scores_by_p.size())
        throw Error(ErrorCode::InvalidArgument, "reference p is not among the score columns");
    table.reference_column = ref;

    auto make_row = [&](uint32_t v, bool endpoint) {
        RankingRow row;
        row.node = v;
        row.id = ctx.dag().node(v).id;
        row.label = ctx.dag().node(v).label;
        for (const auto& scores : scores_by_p) row.phi.push_back(scores.phi[v]);
        row.citations = ctx.citation_count(v);
        row.references = ctx.reference_count(v);
        row.endpoint = endpoint;
        return row;
    };
    table.rows.push_back(make_row(ctx.source(), true));
    table.rows.push_back(make_row(ctx.target(), true));

    std::vector<uint32_t> others;
    for (uint32_t v = 0; v < ctx.node_count(); ++v)
        if (v != ctx.source() && v != ctx.target()) others.push_back(v);
    const auto& ref_phi = scores_by_p[ref].phi;
    std::sort(others.begin(), others.end(), [&](uint32_t a, uint32_t b) {
        if (ref_phi[a] != ref_phi[b]) return ref_phi[a] > ref_phi[b];
        return ctx.dag().node(a).id < ctx.dag().node(b).id;
    });
    if (others.size() > top_n) others.resize(top_n);
    for (uint32_t v : others) table.rows.push_back(make_row(v, false));
    return table;
}

} // namespace intermediacy
