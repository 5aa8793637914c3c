#include "intermediacy.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "intermediacy/analysis.hpp"
#include "intermediacy/baselines.hpp"
#include "intermediacy/closure.hpp"
#include "intermediacy/exact.hpp"
#include "intermediacy/graph.hpp"
#include "intermediacy/monte_carlo.hpp"
#include "intermediacy/path_stats.hpp"

using namespace intermediacy;

struct imy_graph {
    Dag dag;
};

struct imy_closure {
    StContext ctx;
};

struct imy_scores {
    IntermediacyScores scores;
};

struct imy_path_stats {
    PathStats stats;
};

struct imy_main_path {
    MainPathResult result;
};

namespace {

thread_local std::string g_last_error;

imy_status status_of(const Error& e) {
    switch (e.code()) {
        case ErrorCode::InvalidArgument: return IMY_ERR_INVALID_ARGUMENT;
        case ErrorCode::ParseError: return IMY_ERR_PARSE;
        case ErrorCode::CycleDetected: return IMY_ERR_CYCLE;
        case ErrorCode::SelfLoop: return IMY_ERR_SELF_LOOP;
        case ErrorCode::DuplicateEdge: return IMY_ERR_DUPLICATE_EDGE;
        case ErrorCode::UnknownNode: return IMY_ERR_UNKNOWN_NODE;
        case ErrorCode::NoSourceTargetPath: return IMY_ERR_NO_PATH;
        case ErrorCode::TooLarge: return IMY_ERR_TOO_LARGE;
        case ErrorCode::WouldCreateCycle: return IMY_ERR_WOULD_CREATE_CYCLE;
        case ErrorCode::PreconditionViolated: return IMY_ERR_PRECONDITION;
        case ErrorCode::IoError: return IMY_ERR_IO;
    }
    return IMY_ERR_INTERNAL;
}

template <typename Fn>
imy_status guarded(Fn&& fn) {
    try {
        fn();
        return IMY_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return IMY_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return IMY_ERR_INTERNAL;
    }
}

size_t write_decimal(const BigInt& value, char* buf, size_t len) {
    std::string s = value.str();
    if (buf && len > 0) {
        size_t n = std::min(len - 1, s.size());
        std::memcpy(buf, s.data(), n);
        buf[n] = '\0';
    }
    return s.size();
}

} // namespace

extern "C" {

const char* imy_version(void) { return "0.1.0"; }

const char* imy_last_error(void) { return g_last_error.c_str(); }

imy_status imy_graph_read(const char* edges_path, const char* nodes_path, imy_graph** out) {
    return guarded([&] {
        *out = new imy_graph{read_dag(edges_path, nodes_path ? nodes_path : "")};
    });
}

imy_status imy_graph_build(const char* const* tails, const char* const* heads,
                           size_t n_edges, imy_graph** out) {
    return guarded([&] {
        std::vector<std::pair<std::string, std::string>> edges;
        edges.reserve(n_edges);
        for (size_t i = 0; i < n_edges; ++i) edges.emplace_back(tails[i], heads[i]);
        *out = new imy_graph{Dag::build({}, edges)};
    });
}

void imy_graph_free(imy_graph* graph) { delete graph; }

size_t imy_graph_node_count(const imy_graph* graph) { return graph->dag.node_count(); }
size_t imy_graph_edge_count(const imy_graph* graph) { return graph->dag.edge_count(); }
size_t imy_graph_warning_count(const imy_graph* graph) { return graph->dag.warnings().size(); }
const char* imy_graph_warning(const imy_graph* graph, size_t i) {
    return graph->dag.warnings()[i].c_str();
}

imy_status imy_closure_create(const imy_graph* graph, const char* source_id,
                              const char* target_id, imy_closure** out) {
    return guarded([&] {
        *out = new imy_closure{StContext::extract(graph->dag, source_id, target_id)};
    });
}

void imy_closure_free(imy_closure* closure) { delete closure; }

size_t imy_closure_node_count(const imy_closure* c) { return c->ctx.node_count(); }
size_t imy_closure_edge_count(const imy_closure* c) { return c->ctx.edge_count(); }
size_t imy_closure_source(const imy_closure* c) { return c->ctx.source(); }
size_t imy_closure_target(const imy_closure* c) { return c->ctx.target(); }

const char* imy_closure_node_id(const imy_closure* c, size_t node) {
    return c->ctx.dag().node(static_cast<uint32_t>(node)).id.c_str();
}

const char* imy_closure_node_label(const imy_closure* c, size_t node) {
    return c->ctx.dag().node(static_cast<uint32_t>(node)).label.c_str();
}

imy_status imy_closure_node_year(const imy_closure* c, size_t node, int* year) {
    const auto& rec = c->ctx.dag().node(static_cast<uint32_t>(node));
    if (!rec.year) {
        g_last_error = "node '" + rec.id + "' has no year";
        return IMY_ERR_INVALID_ARGUMENT;
    }
    *year = *rec.year;
    return IMY_OK;
}

size_t imy_closure_citation_count(const imy_closure* c, size_t node) {
    return c->ctx.citation_count(static_cast<uint32_t>(node));
}

size_t imy_closure_reference_count(const imy_closure* c, size_t node) {
    return c->ctx.reference_count(static_cast<uint32_t>(node));
}

imy_status imy_closure_edge(const imy_closure* c, size_t edge, size_t* tail, size_t* head) {
    if (edge >= c->ctx.edge_count()) {
        g_last_error = "edge index out of range";
        return IMY_ERR_INVALID_ARGUMENT;
    }
    *tail = c->ctx.dag().edge(static_cast<uint32_t>(edge)).tail;
    *head = c->ctx.dag().edge(static_cast<uint32_t>(edge)).head;
    return IMY_OK;
}

double imy_closure_suggest_p(const imy_closure* c) { return suggest_p(c->ctx); }

imy_status imy_exact_scores(const imy_closure* c, double p, uint32_t max_edges,
                            imy_scores** out) {
    return guarded([&] { *out = new imy_scores{exact_intermediacy(c->ctx, p, max_edges)}; });
}

imy_status imy_mc_scores(const imy_closure* c, double p, uint64_t samples, uint64_t seed,
                         unsigned workers, imy_scores** out) {
    return guarded([&] {
        SamplerConfig config{p, samples, seed, workers};
        *out = new imy_scores{estimate_intermediacy(c->ctx, config)};
    });
}

void imy_scores_free(imy_scores* scores) { delete scores; }

imy_method imy_scores_method(const imy_scores* s) {
    return s->scores.method == IntermediacyScores::Method::Exact ? IMY_METHOD_EXACT
                                                                 : IMY_METHOD_MONTE_CARLO;
}

double imy_scores_p(const imy_scores* s) { return s->scores.p; }
uint64_t imy_scores_samples(const imy_scores* s) { return s->scores.samples; }
uint64_t imy_scores_seed(const imy_scores* s) { return s->scores.seed; }

double imy_scores_value(const imy_scores* s, size_t node) { return s->scores.phi[node]; }

double imy_scores_stderr(const imy_scores* s, size_t node) {
    if (s->scores.stderrs.empty()) return std::numeric_limits<double>::quiet_NaN();
    return s->scores.stderrs[node];
}

imy_status imy_st_probability(const imy_closure* c, double p, uint64_t samples,
                              uint64_t seed, unsigned workers, double* value,
                              double* stderr_out) {
    return guarded([&] {
        auto est = estimate_st_probability(c->ctx, p, samples, seed, workers);
        *value = est.value;
        if (stderr_out) *stderr_out = est.stderr_;
    });
}

imy_status imy_st_probability_exact(const imy_closure* c, double p, uint32_t max_edges,
                                    double* value) {
    return guarded([&] {
        *value = reach_probability(c->ctx, c->ctx.source(), c->ctx.target(), p, max_edges);
    });
}

imy_status imy_path_stats_create(const imy_closure* c, imy_path_stats** out) {
    return guarded([&] { *out = new imy_path_stats{compute_path_stats(c->ctx)}; });
}

void imy_path_stats_free(imy_path_stats* stats) { delete stats; }

size_t imy_path_stats_paths_from_source(const imy_path_stats* s, size_t node, char* buf,
                                        size_t len) {
    return write_decimal(s->stats.paths_from_source[node], buf, len);
}

size_t imy_path_stats_paths_to_target(const imy_path_stats* s, size_t node, char* buf,
                                      size_t len) {
    return write_decimal(s->stats.paths_to_target[node], buf, len);
}

size_t imy_path_stats_edge_spc(const imy_path_stats* s, size_t edge, char* buf, size_t len) {
    return write_decimal(s->stats.edge_spc[edge], buf, len);
}

uint32_t imy_path_stats_shortest_len(const imy_path_stats* s, size_t node) {
    return s->stats.shortest_len[node];
}

uint32_t imy_path_stats_independent_paths(const imy_path_stats* s, size_t node) {
    return s->stats.independent_paths[node];
}

imy_status imy_main_path_create(const imy_closure* c, imy_main_path_variant variant,
                                imy_main_path** out) {
    return guarded([&] {
        PathStats stats = compute_path_stats(c->ctx);
        *out = new imy_main_path{variant == IMY_MAIN_PATH_LOCAL
                                     ? local_main_path(c->ctx, stats)
                                     : global_main_path(c->ctx, stats)};
    });
}

void imy_main_path_free(imy_main_path* path) { delete path; }

size_t imy_main_path_length(const imy_main_path* p) { return p->result.edges.size(); }
size_t imy_main_path_edge(const imy_main_path* p, size_t i) { return p->result.edges[i]; }

size_t imy_main_path_total_spc(const imy_main_path* p, char* buf, size_t len) {
    return write_decimal(p->result.spc_total, buf, len);
}

imy_status imy_expected_path_counts(const imy_closure* c, double p, double* out) {
    return guarded([&] {
        auto epc = expected_path_count(c->ctx, p);
        std::memcpy(out, epc.data(), epc.size() * sizeof(double));
    });
}

imy_status imy_resistance_through(const imy_closure* c, size_t node, double* out) {
    return guarded([&] { *out = resistance_through(c->ctx, static_cast<uint32_t>(node)); });
}

imy_status imy_correlation(imy_correlation_kind kind, const double* x, const double* y,
                           size_t n, double* out) {
    return guarded([&] {
        *out = correlation({x, n}, {y, n},
                           kind == IMY_CORRELATION_PEARSON ? CorrelationKind::Pearson
                                                           : CorrelationKind::Spearman);
    });
}

imy_status imy_equivalence_threshold(unsigned k, double* out) {
    return guarded([&] { *out = equivalence_threshold(k); });
}

imy_status imy_sweep(const imy_closure* c, const double* grid, size_t n_points,
                     uint64_t samples, uint64_t seed, unsigned workers, uint32_t max_edges,
                     double* values, double* stderrs, int* methods) {
    return guarded([&] {
        SamplerConfig config;
        config.replicates = samples;
        config.seed = seed;
        config.workers = workers;
        auto result = p_sweep(c->ctx, {grid, n_points}, config, max_edges);
        for (size_t i = 0; i < result.points.size(); ++i) {
            values[i] = result.points[i].st_probability;
            if (stderrs) stderrs[i] = result.points[i].stderr_;
            if (methods)
                methods[i] = result.points[i].method == IntermediacyScores::Method::Exact
                                 ? IMY_METHOD_EXACT
                                 : IMY_METHOD_MONTE_CARLO;
        }
    });
}

} // extern "C"
