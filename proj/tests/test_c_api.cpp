#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "intermediacy.h"

namespace {

struct Fixture {
    imy_graph* graph = nullptr;
    imy_closure* closure = nullptr;

    explicit Fixture(const std::vector<std::pair<std::string, std::string>>& edges,
                     const std::string& s, const std::string& t) {
        std::vector<const char*> tails, heads;
        for (const auto& [a, b] : edges) {
            tails.push_back(a.c_str());
            heads.push_back(b.c_str());
        }
        REQUIRE(imy_graph_build(tails.data(), heads.data(), tails.size(), &graph) == IMY_OK);
        REQUIRE(imy_closure_create(graph, s.c_str(), t.c_str(), &closure) == IMY_OK);
    }

    ~Fixture() {
        imy_closure_free(closure);
        imy_graph_free(graph);
    }

    size_t index_of(const std::string& id) const {
        for (size_t i = 0; i < imy_closure_node_count(closure); ++i)
            if (id == imy_closure_node_id(closure, i)) return i;
        FAIL("node not found: ", id);
        return 0;
    }
};

} // namespace

TEST_CASE("version and error reporting") {
    CHECK(std::string(imy_version()) == "0.1.0");
    imy_graph* graph = nullptr;
    const char* tails[] = {"a", "b"};
    const char* heads[] = {"b", "a"};
    CHECK(imy_graph_build(tails, heads, 2, &graph) == IMY_ERR_CYCLE);
    CHECK(std::string(imy_last_error()).find("cycle") != std::string::npos);
}

TEST_CASE("graph read from files") {
    const char* path = "c_api_edges.tsv";
    {
        std::ofstream out(path);
        out << "s\ta\na\tt\n# note\ns\ta\n";
    }
    imy_graph* graph = nullptr;
    REQUIRE(imy_graph_read(path, nullptr, &graph) == IMY_OK);
    CHECK(imy_graph_node_count(graph) == 3);
    CHECK(imy_graph_edge_count(graph) == 2);
    CHECK(imy_graph_warning_count(graph) == 1);
    imy_graph_free(graph);
    std::remove(path);

    CHECK(imy_graph_read("missing.tsv", nullptr, &graph) == IMY_ERR_IO);
}

TEST_CASE("closure accessors") {
    Fixture f({{"s", "a"}, {"a", "t"}, {"s", "b"}, {"b", "t"}, {"x", "t"}}, "s", "t");
    CHECK(imy_closure_node_count(f.closure) == 4);
    CHECK(imy_closure_edge_count(f.closure) == 4);
    size_t a = f.index_of("a");
    CHECK(imy_closure_citation_count(f.closure, a) == 1);
    CHECK(imy_closure_reference_count(f.closure, a) == 1);
    CHECK(imy_closure_suggest_p(f.closure) == doctest::Approx(0.5)); // 4/(2*4)
    size_t tail = 0, head = 0;
    REQUIRE(imy_closure_edge(f.closure, 0, &tail, &head) == IMY_OK);
    CHECK(std::string(imy_closure_node_id(f.closure, tail)) == "s");
    CHECK(imy_closure_edge(f.closure, 99, &tail, &head) == IMY_ERR_INVALID_ARGUMENT);

    imy_closure* bad = nullptr;
    CHECK(imy_closure_create(f.graph, "s", "nope", &bad) == IMY_ERR_UNKNOWN_NODE);
    CHECK(imy_closure_create(f.graph, "s", "s", &bad) == IMY_ERR_INVALID_ARGUMENT);
}

TEST_CASE("exact and Monte Carlo scores through the C surface") {
    Fixture f({{"s", "w"}, {"w", "t"}}, "s", "t");
    imy_scores* exact = nullptr;
    REQUIRE(imy_exact_scores(f.closure, 0.7, 25, &exact) == IMY_OK);
    CHECK(imy_scores_method(exact) == IMY_METHOD_EXACT);
    CHECK(imy_scores_p(exact) == 0.7);
    CHECK(imy_scores_value(exact, f.index_of("w")) == doctest::Approx(0.49).epsilon(1e-12));
    CHECK(std::isnan(imy_scores_stderr(exact, 0)));
    imy_scores_free(exact);

    imy_scores* mc = nullptr;
    REQUIRE(imy_mc_scores(f.closure, 0.7, 100000, 11, 4, &mc) == IMY_OK);
    CHECK(imy_scores_method(mc) == IMY_METHOD_MONTE_CARLO);
    CHECK(imy_scores_samples(mc) == 100000);
    CHECK(imy_scores_seed(mc) == 11);
    size_t w = f.index_of("w");
    CHECK(std::abs(imy_scores_value(mc, w) - 0.49) <= 4.0 * imy_scores_stderr(mc, w));
    imy_scores_free(mc);

    double value = 0.0, se = 0.0;
    REQUIRE(imy_st_probability(f.closure, 0.7, 50000, 3, 2, &value, &se) == IMY_OK);
    CHECK(std::abs(value - 0.49) <= 4.0 * se);
    REQUIRE(imy_st_probability_exact(f.closure, 0.7, 25, &value) == IMY_OK);
    CHECK(value == doctest::Approx(0.49).epsilon(1e-12));

    imy_scores* too_large = nullptr;
    CHECK(imy_exact_scores(f.closure, 0.7, 1, &too_large) == IMY_ERR_TOO_LARGE);
}

TEST_CASE("path stats and main paths through the C surface") {
    Fixture f({{"s", "u"}, {"u", "x"}, {"x", "v"}, {"u", "y"}, {"y", "v"},
               {"v", "t"}, {"s", "w"}, {"w", "t"}},
              "s", "t");
    imy_path_stats* stats = nullptr;
    REQUIRE(imy_path_stats_create(f.closure, &stats) == IMY_OK);
    char buf[64];
    size_t n = imy_path_stats_paths_to_target(stats, imy_closure_source(f.closure), buf,
                                              sizeof buf);
    CHECK(n == 1);
    CHECK(std::string(buf) == "3");
    CHECK(imy_path_stats_shortest_len(stats, f.index_of("w")) == 2);
    CHECK(imy_path_stats_independent_paths(stats, imy_closure_source(f.closure)) == 2);

    // Truncation contract: the full length comes back even for a tiny buffer.
    char tiny[1];
    CHECK(imy_path_stats_paths_to_target(stats, imy_closure_source(f.closure), tiny, 1) == 1);
    CHECK(tiny[0] == '\0');

    imy_main_path* local = nullptr;
    REQUIRE(imy_main_path_create(f.closure, IMY_MAIN_PATH_LOCAL, &local) == IMY_OK);
    REQUIRE(imy_main_path_length(local) == 4);
    size_t tail = 0, head = 0;
    REQUIRE(imy_closure_edge(f.closure, imy_main_path_edge(local, 0), &tail, &head) == IMY_OK);
    CHECK(std::string(imy_closure_node_id(f.closure, head)) == "u");
    imy_main_path_total_spc(local, buf, sizeof buf);
    CHECK(std::string(buf) == "6");
    imy_main_path_free(local);
    imy_path_stats_free(stats);
}

TEST_CASE("baselines and analysis helpers through the C surface") {
    Fixture f({{"s", "w"}, {"w", "t"}}, "s", "t");
    std::vector<double> epc(imy_closure_node_count(f.closure));
    REQUIRE(imy_expected_path_counts(f.closure, 0.85, epc.data()) == IMY_OK);
    CHECK(epc[f.index_of("w")] == doctest::Approx(0.7225).epsilon(1e-12));

    double r = 0.0;
    REQUIRE(imy_resistance_through(f.closure, f.index_of("w"), &r) == IMY_OK);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-10));

    double threshold = 0.0;
    REQUIRE(imy_equivalence_threshold(5, &threshold) == IMY_OK);
    CHECK(threshold == doctest::Approx(0.22).epsilon(0.025));
    CHECK(imy_equivalence_threshold(1, &threshold) == IMY_ERR_INVALID_ARGUMENT);

    double x[] = {1, 2, 3, 4};
    double y[] = {1, 4, 9, 16};
    double corr = 0.0;
    REQUIRE(imy_correlation(IMY_CORRELATION_SPEARMAN, x, y, 4, &corr) == IMY_OK);
    CHECK(corr == doctest::Approx(1.0).epsilon(1e-12));
    double flat[] = {1, 1, 1, 1};
    REQUIRE(imy_correlation(IMY_CORRELATION_PEARSON, flat, y, 4, &corr) == IMY_OK);
    CHECK(std::isnan(corr));

    double grid[] = {0.1, 0.5, 0.9};
    double values[3], stderrs[3];
    int methods[3];
    REQUIRE(imy_sweep(f.closure, grid, 3, 1000, 1, 1, 25, values, stderrs, methods) == IMY_OK);
    for (int i = 0; i < 3; ++i) {
        CHECK(methods[i] == IMY_METHOD_EXACT);
        CHECK(values[i] == doctest::Approx(grid[i] * grid[i]).epsilon(1e-12));
    }
}
