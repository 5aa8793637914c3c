// intermediacy-cli: command-line front end over the shared-library C API.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "intermediacy.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr uint32_t kMaxExactEdges = 25;

// Exit codes: 2 for input problems, 3 when the exact method refuses a graph
// that is too large for enumeration.
[[noreturn]] void fail(int code, const std::string& message) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    std::exit(code);
}

void check(imy_status status) {
    if (status == IMY_OK) return;
    if (status == IMY_ERR_TOO_LARGE)
        fail(3, std::string(imy_last_error()) + " (rerun with --method mc)");
    fail(2, imy_last_error());
}

struct CommonOpts {
    std::string edges;
    std::string nodes;
    std::string source;
    std::string target;
    uint64_t samples = 100000;
    std::optional<uint64_t> seed;
    unsigned workers = 1;
    std::string method = "auto";
    std::string format = "tsv";
    std::string out = ".";

    uint64_t resolved_seed() const {
        if (seed) return *seed;
        if (const char* env = std::getenv("INTERMEDIACY_SEED")) {
            try {
                return std::stoull(env);
            } catch (const std::exception&) {
                fail(2, std::string("INTERMEDIACY_SEED is not an integer: ") + env);
            }
        }
        return 0;
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool need_closure = true) {
    cmd->add_option("--edges", opts.edges, "citing<TAB>cited edge list")
        ->required(need_closure);
    cmd->add_option("--nodes", opts.nodes, "optional id,label,year CSV");
    cmd->add_option("--source", opts.source, "source node id")->required(need_closure);
    cmd->add_option("--target", opts.target, "target node id")->required(need_closure);
    cmd->add_option("--samples", opts.samples, "Monte Carlo replicates");
    cmd->add_option("--seed", opts.seed, "RNG seed (fallback: INTERMEDIACY_SEED, then 0)");
    cmd->add_option("--workers", opts.workers, "Monte Carlo worker threads");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"tsv", "json"}));
    cmd->add_option("--out", opts.out, "output directory");
}

struct Handles {
    imy_graph* graph = nullptr;
    imy_closure* closure = nullptr;

    ~Handles() {
        imy_closure_free(closure);
        imy_graph_free(graph);
    }
};

void open_closure(const CommonOpts& opts, Handles& h) {
    check(imy_graph_read(opts.edges.c_str(), opts.nodes.empty() ? nullptr : opts.nodes.c_str(),
                         &h.graph));
    for (size_t i = 0; i < imy_graph_warning_count(h.graph); ++i)
        std::fprintf(stderr, "warning: %s\n", imy_graph_warning(h.graph, i));
    check(imy_closure_create(h.graph, opts.source.c_str(), opts.target.c_str(), &h.closure));
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string num(double v, int precision = 10) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::ofstream open_out(const CommonOpts& opts, const std::string& name) {
    fs::path dir(opts.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary); // binary: LF endings everywhere
    if (!out) fail(2, "cannot write " + path.string());
    return out;
}

// The manifest captures every input needed to replay the run bit-for-bit.
void write_manifest(const CommonOpts& opts, const std::string& command, json extra) {
    json manifest{{"command", command},
                  {"edges", opts.edges},
                  {"nodes", opts.nodes.empty() ? json(nullptr) : json(opts.nodes)},
                  {"source", opts.source},
                  {"target", opts.target},
                  {"samples", opts.samples},
                  {"seed", opts.resolved_seed()},
                  {"workers", opts.workers},
                  {"method", opts.method},
                  {"format", opts.format},
                  {"timestamp", iso_timestamp()},
                  {"version", imy_version()}};
    manifest.update(extra);
    auto out = open_out(opts, command + ".manifest.json");
    out << manifest.dump(2) << "\n";
}

imy_scores* compute_scores(const CommonOpts& opts, const Handles& h, double p,
                           std::string& method_used) {
    imy_scores* scores = nullptr;
    if (opts.method == "exact") {
        check(imy_exact_scores(h.closure, p, kMaxExactEdges, &scores));
        method_used = "exact";
    } else if (opts.method == "mc") {
        check(imy_mc_scores(h.closure, p, opts.samples, opts.resolved_seed(), opts.workers,
                            &scores));
        method_used = "mc";
    } else {
        if (imy_exact_scores(h.closure, p, kMaxExactEdges, &scores) == IMY_OK) {
            method_used = "exact";
        } else {
            check(imy_mc_scores(h.closure, p, opts.samples, opts.resolved_seed(), opts.workers,
                                &scores));
            method_used = "mc";
        }
    }
    return scores;
}

struct Row {
    size_t node;
    std::string id;
    double phi;
};

// Ranking order: source and target first, then descending phi, ties by id.
std::vector<Row> ranked_rows(const imy_closure* closure, const imy_scores* scores,
                             size_t top) {
    size_t s = imy_closure_source(closure);
    size_t t = imy_closure_target(closure);
    std::vector<Row> body;
    for (size_t v = 0; v < imy_closure_node_count(closure); ++v) {
        if (v == s || v == t) continue;
        body.push_back({v, imy_closure_node_id(closure, v), imy_scores_value(scores, v)});
    }
    std::sort(body.begin(), body.end(), [](const Row& a, const Row& b) {
        if (a.phi != b.phi) return a.phi > b.phi;
        return a.id < b.id;
    });
    if (body.size() > top) body.resize(top);
    std::vector<Row> rows;
    rows.push_back({s, imy_closure_node_id(closure, s), imy_scores_value(scores, s)});
    rows.push_back({t, imy_closure_node_id(closure, t), imy_scores_value(scores, t)});
    rows.insert(rows.end(), body.begin(), body.end());
    return rows;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            fail(2, "bad --p-grid entry: " + item);
        }
    }
    if (grid.empty()) fail(2, "--p-grid is empty");
    return grid;
}

std::vector<double> default_sweep_grid() {
    std::vector<double> grid;
    const double lo = std::log(0.01), hi = std::log(0.99);
    for (int i = 0; i < 50; ++i) grid.push_back(std::exp(lo + (hi - lo) * i / 49.0));
    return grid;
}

// --- subcommands --------------------------------------------------------

void cmd_score(const CommonOpts& opts, double p, size_t top, std::optional<size_t> subnet) {
    Handles h;
    open_closure(opts, h);
    std::string method_used;
    imy_scores* scores = compute_scores(opts, h, p, method_used);

    auto rows = ranked_rows(h.closure, scores, top);
    if (opts.format == "tsv") {
        auto out = open_out(opts, "score.tsv");
        out << "id\tlabel\tphi\tstderr\tcitations\treferences\n";
        for (const auto& row : rows)
            out << row.id << '\t' << imy_closure_node_label(h.closure, row.node) << '\t'
                << num(row.phi) << '\t' << num(imy_scores_stderr(scores, row.node)) << '\t'
                << imy_closure_citation_count(h.closure, row.node) << '\t'
                << imy_closure_reference_count(h.closure, row.node) << '\n';
    } else {
        json table = json::array();
        for (const auto& row : rows) {
            double se = imy_scores_stderr(scores, row.node);
            table.push_back({{"id", row.id},
                             {"label", imy_closure_node_label(h.closure, row.node)},
                             {"phi", row.phi},
                             {"stderr", std::isnan(se) ? json(nullptr) : json(se)},
                             {"citations", imy_closure_citation_count(h.closure, row.node)},
                             {"references", imy_closure_reference_count(h.closure, row.node)}});
        }
        auto out = open_out(opts, "score.json");
        out << table.dump(2) << "\n";
    }

    if (subnet) {
        std::vector<char> keep(imy_closure_node_count(h.closure), 0);
        keep[imy_closure_source(h.closure)] = 1;
        keep[imy_closure_target(h.closure)] = 1;
        auto all = ranked_rows(h.closure, scores, *subnet);
        for (const auto& row : all) keep[row.node] = 1;
        auto out = open_out(opts, "subnet.tsv");
        out << "citing\tcited\n";
        for (size_t e = 0; e < imy_closure_edge_count(h.closure); ++e) {
            size_t tail = 0, head = 0;
            check(imy_closure_edge(h.closure, e, &tail, &head));
            if (keep[tail] && keep[head])
                out << imy_closure_node_id(h.closure, tail) << '\t'
                    << imy_closure_node_id(h.closure, head) << '\n';
        }
    }

    write_manifest(opts, "score",
                   {{"p", p},
                    {"top", top},
                    {"subnet", subnet ? json(*subnet) : json(nullptr)},
                    {"method_used", method_used}});
    std::printf("wrote score.%s (%s method, %zu rows)\n", opts.format.c_str(),
                method_used.c_str(), rows.size());
    imy_scores_free(scores);
}

void cmd_sweep(const CommonOpts& opts, const std::string& grid_text) {
    Handles h;
    open_closure(opts, h);
    auto grid = grid_text.empty() ? default_sweep_grid() : parse_grid(grid_text);
    std::vector<double> values(grid.size()), stderrs(grid.size());
    std::vector<int> methods(grid.size());
    check(imy_sweep(h.closure, grid.data(), grid.size(), opts.samples, opts.resolved_seed(),
                    opts.workers, opts.method == "mc" ? 0 : kMaxExactEdges, values.data(),
                    stderrs.data(), methods.data()));

    if (opts.format == "tsv") {
        auto out = open_out(opts, "sweep.tsv");
        out << "p\tst_probability\tstderr\tmethod\n";
        for (size_t i = 0; i < grid.size(); ++i)
            out << num(grid[i]) << '\t' << num(values[i]) << '\t' << num(stderrs[i]) << '\t'
                << (methods[i] == IMY_METHOD_EXACT ? "exact" : "mc") << '\n';
    } else {
        json points = json::array();
        for (size_t i = 0; i < grid.size(); ++i)
            points.push_back({{"p", grid[i]},
                              {"st_probability", values[i]},
                              {"stderr", std::isnan(stderrs[i]) ? json(nullptr) : json(stderrs[i])},
                              {"method", methods[i] == IMY_METHOD_EXACT ? "exact" : "mc"}});
        auto out = open_out(opts, "sweep.json");
        out << points.dump(2) << "\n";
    }
    write_manifest(opts, "sweep", {{"p_grid", grid}});
    std::printf("wrote sweep.%s (%zu points)\n", opts.format.c_str(), grid.size());
}

void cmd_suggest_p(const CommonOpts& opts) {
    Handles h;
    open_closure(opts, h);
    double p = imy_closure_suggest_p(h.closure);
    if (p <= 0.0 || p >= 1.0)
        std::fprintf(stderr, "warning: suggested p = %.4f lies outside (0, 1)\n", p);
    std::printf("%.4f\n", p);
    write_manifest(opts, "suggest-p", {{"suggested_p", p}});
}

void cmd_correlate(const CommonOpts& opts, const std::string& grid_text) {
    Handles h;
    open_closure(opts, h);
    std::vector<double> grid =
        grid_text.empty() ? std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9} : parse_grid(grid_text);

    size_t n = imy_closure_node_count(h.closure);
    std::vector<std::string> names;
    std::vector<std::vector<double>> vectors;
    for (double p : grid) {
        std::string method_used;
        imy_scores* scores = compute_scores(opts, h, p, method_used);
        std::vector<double> phi(n);
        for (size_t v = 0; v < n; ++v) phi[v] = imy_scores_value(scores, v);
        imy_scores_free(scores);
        names.push_back("p=" + num(p, 6));
        vectors.push_back(std::move(phi));
    }
    std::vector<double> cites(n), refs(n);
    for (size_t v = 0; v < n; ++v) {
        cites[v] = static_cast<double>(imy_closure_citation_count(h.closure, v));
        refs[v] = static_cast<double>(imy_closure_reference_count(h.closure, v));
    }
    names.push_back("citations");
    vectors.push_back(std::move(cites));
    names.push_back("references");
    vectors.push_back(std::move(refs));

    auto matrix = [&](imy_correlation_kind kind) {
        std::vector<std::vector<double>> m(names.size(), std::vector<double>(names.size()));
        for (size_t i = 0; i < names.size(); ++i)
            for (size_t j = 0; j < names.size(); ++j)
                check(imy_correlation(kind, vectors[i].data(), vectors[j].data(), n, &m[i][j]));
        return m;
    };
    auto spearman = matrix(IMY_CORRELATION_SPEARMAN);
    auto pearson = matrix(IMY_CORRELATION_PEARSON);

    if (opts.format == "tsv") {
        auto out = open_out(opts, "correlate.tsv");
        out << "kind\trow";
        for (const auto& name : names) out << '\t' << name;
        out << '\n';
        for (const auto& [kind, m] :
             {std::pair{"spearman", &spearman}, std::pair{"pearson", &pearson}})
            for (size_t i = 0; i < names.size(); ++i) {
                out << kind << '\t' << names[i];
                for (size_t j = 0; j < names.size(); ++j) out << '\t' << num((*m)[i][j]);
                out << '\n';
            }
    } else {
        auto dump = [&](const std::vector<std::vector<double>>& m) {
            json rows = json::array();
            for (const auto& row : m) {
                json r = json::array();
                for (double v : row) r.push_back(std::isnan(v) ? json(nullptr) : json(v));
                rows.push_back(r);
            }
            return rows;
        };
        json doc{{"labels", names}, {"spearman", dump(spearman)}, {"pearson", dump(pearson)}};
        auto out = open_out(opts, "correlate.json");
        out << doc.dump(2) << "\n";
    }
    write_manifest(opts, "correlate", {{"p_grid", grid}});
    std::printf("wrote correlate.%s (%zu vectors)\n", opts.format.c_str(), names.size());
}

void cmd_mainpath(const CommonOpts& opts, const std::string& variant) {
    Handles h;
    open_closure(opts, h);
    imy_main_path* path = nullptr;
    check(imy_main_path_create(
        h.closure, variant == "global" ? IMY_MAIN_PATH_GLOBAL : IMY_MAIN_PATH_LOCAL, &path));

    std::vector<char> spc(1 + imy_main_path_total_spc(path, nullptr, 0));
    imy_main_path_total_spc(path, spc.data(), spc.size());

    if (opts.format == "tsv") {
        auto out = open_out(opts, "mainpath.tsv");
        out << "citing\tcited\n";
        for (size_t i = 0; i < imy_main_path_length(path); ++i) {
            size_t tail = 0, head = 0;
            check(imy_closure_edge(h.closure, imy_main_path_edge(path, i), &tail, &head));
            out << imy_closure_node_id(h.closure, tail) << '\t'
                << imy_closure_node_id(h.closure, head) << '\n';
        }
    } else {
        json edges = json::array();
        for (size_t i = 0; i < imy_main_path_length(path); ++i) {
            size_t tail = 0, head = 0;
            check(imy_closure_edge(h.closure, imy_main_path_edge(path, i), &tail, &head));
            edges.push_back({{"citing", imy_closure_node_id(h.closure, tail)},
                             {"cited", imy_closure_node_id(h.closure, head)}});
        }
        json doc{{"variant", variant}, {"total_spc", spc.data()}, {"edges", edges}};
        auto out = open_out(opts, "mainpath.json");
        out << doc.dump(2) << "\n";
    }
    write_manifest(opts, "mainpath", {{"variant", variant}, {"total_spc", spc.data()}});
    std::printf("%s main path: %zu edges, total spc %s\n", variant.c_str(),
                imy_main_path_length(path), spc.data());
    imy_main_path_free(path);
}

void cmd_epc(const CommonOpts& opts, double p) {
    Handles h;
    open_closure(opts, h);
    size_t n = imy_closure_node_count(h.closure);
    std::vector<double> epc(n);
    check(imy_expected_path_counts(h.closure, p, epc.data()));

    std::vector<size_t> order(n);
    for (size_t v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (epc[a] != epc[b]) return epc[a] > epc[b];
        return std::string(imy_closure_node_id(h.closure, a)) <
               imy_closure_node_id(h.closure, b);
    });

    if (opts.format == "tsv") {
        auto out = open_out(opts, "epc.tsv");
        out << "id\tlabel\tepc\n";
        for (size_t v : order)
            out << imy_closure_node_id(h.closure, v) << '\t'
                << imy_closure_node_label(h.closure, v) << '\t' << num(epc[v]) << '\n';
    } else {
        json rows = json::array();
        for (size_t v : order)
            rows.push_back({{"id", imy_closure_node_id(h.closure, v)},
                            {"label", imy_closure_node_label(h.closure, v)},
                            {"epc", epc[v]}});
        auto out = open_out(opts, "epc.json");
        out << rows.dump(2) << "\n";
    }
    write_manifest(opts, "epc", {{"p", p}});
    std::printf("wrote epc.%s (%zu rows)\n", opts.format.c_str(), n);
}

void cmd_resistance(const CommonOpts& opts) {
    Handles h;
    open_closure(opts, h);
    size_t n = imy_closure_node_count(h.closure);
    std::vector<double> r(n);
    for (size_t v = 0; v < n; ++v) check(imy_resistance_through(h.closure, v, &r[v]));

    std::vector<size_t> order(n);
    for (size_t v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (r[a] != r[b]) return r[a] < r[b]; // lower resistance = more central
        return std::string(imy_closure_node_id(h.closure, a)) <
               imy_closure_node_id(h.closure, b);
    });

    if (opts.format == "tsv") {
        auto out = open_out(opts, "resistance.tsv");
        out << "id\tlabel\tresistance\n";
        for (size_t v : order)
            out << imy_closure_node_id(h.closure, v) << '\t'
                << imy_closure_node_label(h.closure, v) << '\t' << num(r[v], 12) << '\n';
    } else {
        json rows = json::array();
        for (size_t v : order)
            rows.push_back({{"id", imy_closure_node_id(h.closure, v)},
                            {"label", imy_closure_node_label(h.closure, v)},
                            {"resistance", r[v]}});
        auto out = open_out(opts, "resistance.json");
        out << rows.dump(2) << "\n";
    }
    write_manifest(opts, "resistance", json::object());
    std::printf("wrote resistance.%s (%zu rows)\n", opts.format.c_str(), n);
}

void cmd_exact_check(const CommonOpts& opts, double p) {
    Handles h;
    open_closure(opts, h);
    imy_scores* exact = nullptr;
    check(imy_exact_scores(h.closure, p, kMaxExactEdges, &exact));
    imy_scores* mc = nullptr;
    check(imy_mc_scores(h.closure, p, opts.samples, opts.resolved_seed(), opts.workers, &mc));

    double worst = 0.0;
    for (size_t v = 0; v < imy_closure_node_count(h.closure); ++v) {
        double diff = std::abs(imy_scores_value(mc, v) - imy_scores_value(exact, v));
        double se = imy_scores_stderr(mc, v);
        if (se > 0.0) worst = std::max(worst, diff / se);
    }
    std::printf("max deviation: %.4f stderr units over %zu nodes (N=%llu, p=%g)\n", worst,
                imy_closure_node_count(h.closure),
                static_cast<unsigned long long>(opts.samples), p);
    write_manifest(opts, "exact-check", {{"p", p}, {"max_deviation_stderr_units", worst}});
    imy_scores_free(mc);
    imy_scores_free(exact);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Intermediacy of nodes between a source and a target in a DAG"};
    app.require_subcommand(1);
    app.set_version_flag("--version", imy_version());

    CommonOpts opts;
    double p = 0.1;
    size_t top = 10;
    std::optional<size_t> subnet;
    std::string grid_text;
    std::string variant = "local";

    auto* score = app.add_subcommand("score", "rank nodes by intermediacy");
    add_common(score, opts);
    score->add_option("--p", p, "edge activation probability");
    score->add_option("--top", top, "rows beyond source/target");
    score->add_option("--subnet", subnet, "also export the induced top-K edge list");
    score->add_option("--method", opts.method, "estimator")
        ->check(CLI::IsMember({"auto", "exact", "mc"}));

    auto* sweep = app.add_subcommand("sweep", "s-t path probability over a p grid");
    add_common(sweep, opts);
    sweep->add_option("--p-grid", grid_text, "comma-separated p values");
    sweep->add_option("--method", opts.method, "estimator")
        ->check(CLI::IsMember({"auto", "exact", "mc"}));

    auto* suggest = app.add_subcommand("suggest-p", "percolation-based starting p = n/(2m)");
    add_common(suggest, opts);

    auto* correlate = app.add_subcommand(
        "correlate", "correlation matrices across p values and citation counts");
    add_common(correlate, opts);
    correlate->add_option("--p-grid", grid_text, "comma-separated p values");
    correlate->add_option("--method", opts.method, "estimator")
        ->check(CLI::IsMember({"auto", "exact", "mc"}));

    auto* mainpath = app.add_subcommand("mainpath", "main path by search path count");
    add_common(mainpath, opts);
    mainpath->add_option("--variant", variant, "traversal variant")
        ->check(CLI::IsMember({"local", "global"}));

    auto* epc = app.add_subcommand("epc", "expected active path count per node");
    add_common(epc, opts);
    epc->add_option("--p", p, "edge activation probability");

    auto* resistance = app.add_subcommand("resistance", "effective resistance through each node");
    add_common(resistance, opts);

    auto* exact_check =
        app.add_subcommand("exact-check", "compare Monte Carlo against the exact scores");
    add_common(exact_check, opts);
    exact_check->add_option("--p", p, "edge activation probability");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    if (score->parsed()) cmd_score(opts, p, top, subnet);
    else if (sweep->parsed()) cmd_sweep(opts, grid_text);
    else if (suggest->parsed()) cmd_suggest_p(opts);
    else if (correlate->parsed()) cmd_correlate(opts, grid_text);
    else if (mainpath->parsed()) cmd_mainpath(opts, variant);
    else if (epc->parsed()) cmd_epc(opts, p);
    else if (resistance->parsed()) cmd_resistance(opts);
    else if (exact_check->parsed()) cmd_exact_check(opts, p);
    return 0;
}
