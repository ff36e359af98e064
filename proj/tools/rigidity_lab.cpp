// rigidity-lab: exact-arithmetic verification suites for singular-locus
// codimension formulas, resolution-graph multiplicity recursions, and the
// supermaximal-singularity exclusion chain.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rigidity/codim.hpp"
#include "rigidity/excluder.hpp"
#include "rigidity/polyspace.hpp"
#include "rigidity/report.hpp"
#include "rigidity/respath.hpp"
#include "rigidity/rng.hpp"

namespace {

using nlohmann::json;
using namespace rigidity;

struct CommonOpts {
    int jobs = 1;
    std::string format = "json";
    std::string out;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--jobs", opts.jobs, "worker threads (output is independent of this)")
        ->check(CLI::Range(1, 256));
    cmd->add_option("--format", opts.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--out", opts.out, "write the report here instead of stdout");
    cmd->add_flag("--timing", opts.timing, "include wall-clock timing in the report");
}

int emit(const report::Report& rep, const CommonOpts& opts,
         const std::vector<std::string>& csv_columns) {
    std::string payload;
    if (opts.format == "json")
        payload = report::render_json(rep);
    else if (opts.format == "csv")
        payload = report::render_csv(rep, csv_columns);
    else
        payload = report::render_text(rep);

    if (opts.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream file(opts.out, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open output file: " << opts.out << "\n";
            return 2;
        }
        file << payload;
    }
    std::cerr << rep.subcommand << ": entries=" << rep.entries.size()
              << " violations=" << rep.violations.size()
              << " expected_deviations=" << rep.expected_deviations.size() << "\n";
    return rep.violations.empty() ? 0 : 1;
}

// ---------------------------------------------------------------- rank-check

struct RankCheckOpts {
    std::uint64_t seed = 0;
    int n_min = 3, n_max = 4;
    int d_min = 3, d_max = 6;
    int r_max = 2;
    int seeds = 20;
    bool include_d2 = false;
    std::vector<std::string> suites{"points", "line", "family"};
};

json rank_entry(const std::string& suite, int N, int d, int r, int m, int seed_index,
                const Int& expected, int actual, const std::string& note) {
    json e;
    e["suite"] = suite;
    e["N"] = N;
    e["d"] = d;
    e["r"] = r;
    e["m"] = m;
    e["seed"] = seed_index;
    e["expected"] = to_string(expected);
    e["actual"] = actual;
    e["verdict"] = Int(actual) == expected;
    e["note"] = note;
    return e;
}

int cmd_rank_check(const RankCheckOpts& rc, const CommonOpts& opts) {
    using namespace rigidity::polyspace;
    auto t0 = std::chrono::steady_clock::now();

    // Resource cap: refuse grids whose condition matrices would be huge.
    Int max_dim = space_dim(rc.n_max, rc.d_max);
    if (max_dim > 20000) {
        std::cerr << "rank-check: refusing, coefficient space has dimension " << max_dim
                  << " at (N,d)=(" << rc.n_max << "," << rc.d_max << ") (cap 20000)\n";
        return 2;
    }

    auto enabled = [&](const std::string& s) {
        return std::find(rc.suites.begin(), rc.suites.end(), s) != rc.suites.end();
    };

    struct Task {
        std::string suite;
        int N, d, r, m, seed_index;
    };
    std::vector<Task> tasks;
    std::vector<int> degrees;
    if (rc.include_d2 && rc.d_min <= 2 && 2 <= rc.d_max) degrees.push_back(2);
    for (int d = std::max(3, rc.d_min); d <= rc.d_max; ++d) degrees.push_back(d);

    for (int N = std::max(1, rc.n_min); N <= rc.n_max; ++N) {
        for (int d : degrees) {
            if (enabled("points"))
                for (int m = 1; m <= N + 1; ++m)
                    for (int s = 0; s < rc.seeds; ++s) tasks.push_back({"points", N, d, 0, m, s});
            if (enabled("line") && N >= 3 && d >= 3)
                for (int s = 0; s < rc.seeds; ++s) tasks.push_back({"line", N, d, 0, 0, s});
            if (enabled("family") && d >= 3)
                for (int r = 1; r <= rc.r_max && r + 1 <= N; ++r)
                    for (int m = 1; m <= N - r + 1; ++m)
                        for (int s = 0; s < rc.seeds; ++s)
                            tasks.push_back({"family", N, d, r, m, s});
        }
    }

    std::vector<json> results(tasks.size());
    report::parallel_for(tasks.size(), opts.jobs, [&](std::size_t i) {
        const Task& task = tasks[i];
        std::uint64_t sample_seed = SplitMix64::derive(rc.seed, i);
        CoeffSpace space = enumerate_monomials(task.N, task.d);

        if (task.suite == "points") {
            auto pts = random_generic_points(whole_space(task.N), task.m, sample_seed);
            int actual = exact_rank(singularity_conditions(space, pts));
            Int expected = Int(task.m) * (task.N + 1);
            std::string note;
            if (task.d == 2) {
                Int closed_form = expected - binomial(task.m, 2);
                note = Int(actual) == closed_form
                           ? "expected mismatch: independence needs d >= 3; actual matches "
                             "m(N+1) - C(m,2)"
                           : "expected mismatch at d=2, and actual deviates from the d=2 closed "
                             "form";
            }
            results[i] =
                rank_entry("points", task.N, task.d, 0, task.m, task.seed_index, expected, actual, note);
        } else if (task.suite == "line") {
            SplitMix64 rng(sample_seed);
            auto pts = random_generic_points(whole_space(task.N), 2, rng.next());
            int actual = exact_rank(line_singularity_conditions(space, pts[0], pts[1]));
            Int expected = Int(task.d) * task.N + 1;
            results[i] = rank_entry("line", task.N, task.d, 0, 0, task.seed_index, expected, actual,
                                    "fixed-line conditions");
        } else {
            // family: centre x0 = ... = xr = 0, one member per simplex point.
            std::vector<std::vector<Rat>> centre;
            for (int i2 = 0; i2 <= task.r; ++i2) {
                std::vector<Rat> form(task.N + 1, Rat(0));
                form[i2] = 1;
                centre.push_back(form);
            }
            auto family = theta_family(task.d, task.N, centre);
            ConditionMatrix all;
            all.cols = space.dim();
            SplitMix64 rng(sample_seed);
            for (const auto& member : family) {
                auto pts = random_generic_points(member.theta, task.m, rng.next(), {centre[0]});
                auto block = restricted_singularity_conditions(space, member.theta, pts);
                std::string tag;
                for (int e : member.shift) tag += (tag.empty() ? "e=" : ",") + std::to_string(e);
                for (auto& row : block.rows) {
                    row.provenance = tag + ":" + row.provenance;
                    all.rows.push_back(std::move(row));
                }
            }
            int actual = exact_rank(all);
            Int expected =
                Int(task.m) * (task.N - task.r + 1) * codim::simplex_count(task.r, task.d - 3);
            results[i] = rank_entry("family", task.N, task.d, task.r, task.m, task.seed_index,
                                    expected, actual, "subspace-family conditions");
        }
    });

    report::Report rep;
    rep.subcommand = "rank-check";
    rep.config = {{"seed", rc.seed},   {"n_min", rc.n_min}, {"n_max", rc.n_max},
                  {"d_min", rc.d_min}, {"d_max", rc.d_max}, {"r_max", rc.r_max},
                  {"seeds", rc.seeds}, {"include_d2", rc.include_d2},
                  {"suites", rc.suites}};
    for (auto& e : results) {
        bool verdict = e.at("verdict").get<bool>();
        rep.entries.push_back(e);
        if (!verdict) {
            if (e.at("d").get<int>() == 2)
                rep.expected_deviations.push_back(e);
            else
                rep.violations.push_back(e);
        }
    }
    if (opts.timing)
        rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return emit(rep, opts,
                {"suite", "N", "d", "r", "m", "seed", "expected", "actual", "verdict", "note"});
}

// ---------------------------------------------------------------- codim-sweep

struct CodimSweepOpts {
    codim::SweepConfig config;
};

int cmd_codim_sweep(const CodimSweepOpts& cs, const CommonOpts& opts) {
    auto t0 = std::chrono::steady_clock::now();
    codim::SweepReport sw = codim::sweep(cs.config, opts.jobs);

    auto entry_json = [](const codim::SweepEntry& e) {
        json j;
        j["family"] = e.family;
        j["N"] = e.N;
        j["d"] = e.d;
        j["k"] = e.k;
        j["l"] = e.l;
        j["q"] = e.q;
        j["lhs"] = to_string(e.lhs);
        j["rhs"] = to_string(e.rhs);
        j["verdict"] = e.holds;
        j["note"] = e.note;
        return j;
    };

    report::Report rep;
    rep.subcommand = "codim-sweep";
    rep.config = {{"n_min", cs.config.n_min},   {"n_max", cs.config.n_max},
                  {"d_min", cs.config.d_min},   {"d_max", cs.config.d_max},
                  {"k_min", cs.config.k_min},   {"k_max", cs.config.k_max},
                  {"l_min", cs.config.l_min},   {"l_max", cs.config.l_max},
                  {"q_min", cs.config.q_min},   {"q_max", cs.config.q_max},
                  {"m_min", cs.config.m_min},   {"m_max", cs.config.m_max},
                  {"include_d3", cs.config.include_d3},
                  {"families", cs.config.families.empty()
                                   ? std::vector<std::string>{"all"}
                                   : cs.config.families}};
    for (const auto& e : sw.entries) rep.entries.push_back(entry_json(e));
    for (const auto& e : sw.violations) rep.violations.push_back(entry_json(e));
    for (const auto& e : sw.expected_deviations) rep.expected_deviations.push_back(entry_json(e));
    if (opts.timing)
        rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return emit(rep, opts, {"N", "d", "k", "l", "q", "lhs", "rhs", "verdict", "family", "note"});
}

// ---------------------------------------------------------------- graph-check

struct GraphCheckOpts {
    std::uint64_t seed = 0;
    int count = 1000;
    int k_max = 40;
    std::string params;
};

int cmd_graph_check(const GraphCheckOpts& gc, const CommonOpts& opts) {
    using namespace rigidity::respath;
    auto t0 = std::chrono::steady_clock::now();

    report::Report rep;
    rep.subcommand = "graph-check";

    if (!gc.params.empty()) {
        std::ifstream in(gc.params);
        if (!in) {
            std::cerr << "cannot open " << gc.params << "\n";
            return 2;
        }
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& err) {
            std::cerr << "schema error: " << gc.params << ": " << err.what() << "\n";
            return 2;
        }
        ResolutionGraph g = graph_from_json(doc);  // SchemaError propagates to main
        rep.config = {{"params", gc.params}};
        auto violations = validate_graph(g);
        for (const auto& v : violations) {
            json e{{"check", "validate"}, {"rule", v.rule}, {"where", v.where},
                   {"detail", v.detail},  {"verdict", false}};
            rep.entries.push_back(e);
            rep.violations.push_back(e);
        }
        if (violations.empty()) {
            auto r = r_coeffs(g);
            json e{{"check", "validate"},
                   {"verdict", true},
                   {"detail", "valid graph; r = " + [&] {
                        std::string s;
                        for (const auto& v : r) s += (s.empty() ? "" : ",") + to_string(v);
                        return s;
                    }()}};
            rep.entries.push_back(e);
        }
        if (opts.timing)
            rep.timing_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return emit(rep, opts, {"check", "rule", "where", "verdict", "detail"});
    }

    rep.config = {{"seed", gc.seed}, {"count", gc.count}, {"k_max", gc.k_max}};
    std::vector<std::vector<json>> rows(gc.count);
    report::parallel_for(gc.count, opts.jobs, [&](std::size_t i) {
        SplitMix64 rng(SplitMix64::derive(gc.seed, i));
        RandomGraphParams params;
        params.K = 1 + static_cast<int>(rng.below(gc.k_max));
        params.fibre_dim = 2 + static_cast<int>(rng.below(5));
        params.max_singular = static_cast<int>(rng.below(6));
        params.edge_density_pct = 15 + static_cast<int>(rng.below(60));
        params.weight2_pct = static_cast<int>(rng.below(101));
        params.chain = rng.chance_pct(50);
        ResolutionGraph g = random_graph(params, rng.next());

        auto add = [&](const std::string& check, bool verdict, const std::string& detail) {
            rows[i].push_back(json{{"seed", i},
                                   {"K", g.K()},
                                   {"check", check},
                                   {"verdict", verdict},
                                   {"detail", detail}});
        };

        add("validate", validate_graph(g).empty(), "generator output must validate");

        auto r = r_coeffs(g);
        auto p = path_counts(g);
        bool pullback_ok = true;
        for (int v = 1; v <= g.K(); ++v) {
            if (forward_pullback(g, v).top(g.K()) != r[v - 1]) pullback_ok = false;
        }
        add("r-vs-pullback", pullback_ok, "recursion equals the forward pullback expansion");

        const int L_sing = g.L_sing();
        bool bounds_ok = true;
        for (int v = 1; v <= g.K(); ++v) {
            if (v > L_sing && r[v - 1] != p[v - 1]) bounds_ok = false;
            if (v <= L_sing && (r[v - 1] < p[v - 1] || r[v - 1] > 2 * p[v - 1])) bounds_ok = false;
        }
        add("weight-bounds", bounds_ok, "r = p above L_sing, p <= r <= 2p at or below");

        std::map<int, Rat> a;
        for (int v = 1; v <= g.K(); ++v)
            if (g.vertices[v - 1].level <= g.fibre_dim - 2) a[v] = Rat(r[v - 1]);
        add("compatibility", compatibility_check(g, a), "r restricted to the lower part");

        auto part = sigma_partition(g);
        add("partition", part.singular + part.nonsingular == part.lower + part.upper &&
                             part.upper >= 1,
            "sigma identity and sigma_u >= 1");

        if (params.chain) {
            bool monotone = true;
            for (int v = 1; v < g.K(); ++v)
                if (r[v - 1] < r[v]) monotone = false;
            add("monotone-chain", monotone, "r non-increasing on chain-connected graphs");
        }
    });
    for (auto& graph_rows : rows)
        for (auto& e : graph_rows) {
            rep.entries.push_back(e);
            if (!e.at("verdict").get<bool>()) rep.violations.push_back(e);
        }
    if (opts.timing)
        rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return emit(rep, opts, {"seed", "K", "check", "verdict", "detail"});
}

// ---------------------------------------------------------------- exclude

struct ExcludeOpts {
    std::string params;
    int random_count = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int k_max = 12;
};

// The two-stage chain over a three-dimensional fibre: a singular point blown
// up first, the divisorial stage on top.
const char* kBundledInstance = R"json({
  "graph": {
    "M": 2,
    "L_fibre": 2,
    "vertices": [
      {"level": 0, "mu": 1, "codim": 3, "gamma": 1},
      {"level": 1, "mu": 1, "codim": 2, "gamma": 1}
    ],
    "edges": [ {"from": 2, "to": 1, "weight": 1} ]
  },
  "n": "2",
  "nu": ["5", "3"],
  "lambda": "1"
})json";

int cmd_exclude(const ExcludeOpts& eo, const CommonOpts& opts) {
    using namespace rigidity::excluder;
    auto t0 = std::chrono::steady_clock::now();

    report::Report rep;
    rep.subcommand = "exclude";

    json chain = chain_report_to_json(chain_verify());
    bool chain_ok = chain.at("all_certified").get<bool>();

    auto instance_entry = [](const std::string& label, const NFInstance& inst,
                             const ExcludeReport& ex) {
        json e;
        e["instance"] = label;
        e["K"] = inst.graph.K();
        e["check"] = "exclude";
        e["status"] = ex.status;
        e["verdict"] = ex.status == "infeasible";
        e["excess"] = to_string(ex.excess_value);
        e["supermax_margin"] = to_string(ex.supermax_margin);
        e["terminal_square"] = to_string(ex.terminal_square);
        e["detail"] = ex.detail;
        return e;
    };

    if (eo.random_count > 0) {
        rep.config = {{"mode", "random"},
                      {"count", eo.random_count},
                      {"seed", eo.seed},
                      {"k_max", eo.k_max}};
        std::vector<std::vector<json>> rows(eo.random_count);
        report::parallel_for(eo.random_count, opts.jobs, [&](std::size_t i) {
            SplitMix64 rng(SplitMix64::derive(eo.seed, i));
            RandomInstanceParams params;
            params.graph.K = 1 + static_cast<int>(rng.below(eo.k_max));
            params.graph.fibre_dim = 2 + static_cast<int>(rng.below(4));
            params.graph.max_singular = static_cast<int>(rng.below(4));
            params.graph.edge_density_pct = 20 + static_cast<int>(rng.below(50));
            params.graph.weight2_pct = static_cast<int>(rng.below(101));
            NFInstance inst = random_instance(params, rng.next());
            ExcludeReport ex = exclude(inst);
            rows[i].push_back(instance_entry("random-" + std::to_string(i), inst, ex));

            // The weighted-path bounds should hold on every instance graph.
            auto r = respath::r_coeffs(inst.graph);
            auto p = respath::path_counts(inst.graph);
            const int L_sing = inst.graph.L_sing();
            bool bounds_ok = true;
            for (int v = 1; v <= inst.graph.K(); ++v) {
                if (v > L_sing && r[v - 1] != p[v - 1]) bounds_ok = false;
                if (v <= L_sing && (r[v - 1] < p[v - 1] || r[v - 1] > 2 * p[v - 1]))
                    bounds_ok = false;
            }
            rows[i].push_back(json{{"instance", "random-" + std::to_string(i)},
                                   {"K", inst.graph.K()},
                                   {"check", "weight-bounds"},
                                   {"status", bounds_ok ? "ok" : "failed"},
                                   {"verdict", bounds_ok},
                                   {"detail", "r = p above L_sing, p <= r <= 2p at or below"}});
        });
        for (auto& instance_rows : rows)
            for (auto& e : instance_rows) {
                rep.entries.push_back(e);
                if (!e.at("verdict").get<bool>()) rep.violations.push_back(e);
            }
    } else {
        json doc;
        std::string label;
        if (eo.params.empty()) {
            doc = json::parse(kBundledInstance);
            label = "bundled-example";
            rep.config = {{"mode", "bundled-example"}};
        } else {
            std::ifstream in(eo.params);
            if (!in) {
                std::cerr << "cannot open " << eo.params << "\n";
                return 2;
            }
            try {
                doc = json::parse(in);
            } catch (const json::parse_error& err) {
                std::cerr << "schema error: " << eo.params << ": " << err.what() << "\n";
                return 2;
            }
            label = eo.params;
            rep.config = {{"mode", "file"}, {"params", eo.params}};
        }
        NFInstance inst = nf_from_json(doc);
        ExcludeReport ex = exclude(inst);
        json e = instance_entry(label, inst, ex);
        rep.entries.push_back(e);
        if (ex.status != "infeasible") rep.violations.push_back(e);
    }

    rep.config["chain"] = chain;
    if (!chain_ok) {
        json e{{"check", "chain-certificates"}, {"verdict", false}, {"detail", "see config.chain"}};
        rep.entries.push_back(e);
        rep.violations.push_back(e);
    }
    if (opts.timing)
        rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return emit(rep, opts,
                {"instance", "K", "check", "status", "verdict", "excess", "supermax_margin",
                 "terminal_square", "detail"});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification suites for singular-locus codimension bounds and the "
                 "supermaximal-singularity exclusion chain"};
    app.require_subcommand(1);

    CommonOpts common_rank, common_sweep, common_graph, common_exclude;

    RankCheckOpts rank_opts;
    CLI::App* rank = app.add_subcommand(
        "rank-check", "exact ranks of singularity-condition systems vs closed-form codimensions");
    rank->add_option("--seed", rank_opts.seed, "master seed (required)")->required();
    rank->add_option("--n-min", rank_opts.n_min, "smallest ambient dimension");
    rank->add_option("--n-max", rank_opts.n_max, "largest ambient dimension");
    rank->add_option("--d-min", rank_opts.d_min, "smallest degree");
    rank->add_option("--d-max", rank_opts.d_max, "largest degree");
    rank->add_option("--r-max", rank_opts.r_max, "largest subspace codimension (family suite)");
    rank->add_option("--seeds", rank_opts.seeds, "samples per tuple")->check(CLI::Range(1, 10000));
    rank->add_flag("--include-d2", rank_opts.include_d2,
                   "include the documented d=2 boundary rows");
    rank->add_option("--suites", rank_opts.suites, "subset of {points,line,family}")
        ->check(CLI::IsMember({"points", "line", "family"}));
    add_common(rank, common_rank);

    CodimSweepOpts sweep_opts;
    CLI::App* sweepc = app.add_subcommand("codim-sweep",
                                          "closed-form codimension formulas over parameter ranges");
    sweepc->add_option("--n-min", sweep_opts.config.n_min, "smallest ambient dimension");
    sweepc->add_option("--n-max", sweep_opts.config.n_max, "largest ambient dimension");
    sweepc->add_option("--d-min", sweep_opts.config.d_min, "smallest degree");
    sweepc->add_option("--d-max", sweep_opts.config.d_max, "largest degree");
    sweepc->add_option("--k-min", sweep_opts.config.k_min, "smallest span dimension");
    sweepc->add_option("--k-max", sweep_opts.config.k_max, "largest span dimension");
    sweepc->add_option("--l-min", sweep_opts.config.l_min, "smallest singular-component dimension");
    sweepc->add_option("--l-max", sweep_opts.config.l_max, "largest singular-component dimension");
    sweepc->add_option("--q-min", sweep_opts.config.q_min, "smallest curve degree");
    sweepc->add_option("--q-max", sweep_opts.config.q_max, "largest curve degree");
    sweepc->add_option("--m-min", sweep_opts.config.m_min, "smallest double-space dimension");
    sweepc->add_option("--m-max", sweep_opts.config.m_max, "largest double-space dimension");
    sweepc->add_flag("--include-d3", sweep_opts.config.include_d3,
                     "report d=3 rows (classified as expected deviations)");
    sweepc->add_option("--families", sweep_opts.config.families,
                       "subset of {line,plane-full,plane-curve,span-full,span-double,master,"
                       "curve-min-q,min-codim,double-space}")
        ->check(CLI::IsMember({"line", "plane-full", "plane-curve", "span-full", "span-double",
                               "master", "curve-min-q", "min-codim", "double-space"}));
    add_common(sweepc, common_sweep);

    GraphCheckOpts graph_opts;
    CLI::App* graph = app.add_subcommand(
        "graph-check", "resolution-graph validation and weighted path-count properties");
    auto* graph_seed = graph->add_option("--seed", graph_opts.seed, "master seed");
    graph->add_option("--count", graph_opts.count, "number of random graphs")
        ->check(CLI::Range(1, 1000000));
    graph->add_option("--k-max", graph_opts.k_max, "largest chain length")->check(CLI::Range(1, 200));
    auto* graph_params = graph->add_option("--params", graph_opts.params,
                                           "validate this graph JSON instead of sampling");
    add_common(graph, common_graph);

    ExcludeOpts exclude_opts;
    CLI::App* excl = app.add_subcommand(
        "exclude", "exclusion verdicts for supermaximal scenarios plus the chain certificates");
    excl->add_option("--params", exclude_opts.params, "single instance JSON");
    auto* excl_random = excl->add_option("--random", exclude_opts.random_count,
                                         "run this many seeded random supermaximal instances")
                            ->check(CLI::Range(1, 1000000));
    auto* excl_seed = excl->add_option("--seed", exclude_opts.seed, "master seed");
    excl->add_option("--k-max", exclude_opts.k_max, "largest chain length")
        ->check(CLI::Range(1, 200));
    add_common(excl, common_exclude);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rank->parsed()) return cmd_rank_check(rank_opts, common_rank);
        if (sweepc->parsed()) return cmd_codim_sweep(sweep_opts, common_sweep);
        if (graph->parsed()) {
            if (graph_params->count() == 0 && graph_seed->count() == 0) {
                std::cerr << "graph-check: --seed is required for the randomized suite\n";
                return 2;
            }
            return cmd_graph_check(graph_opts, common_graph);
        }
        if (excl->parsed()) {
            if (excl_random->count() > 0 && excl_seed->count() == 0) {
                std::cerr << "exclude: --seed is required with --random\n";
                return 2;
            }
            return cmd_exclude(exclude_opts, common_exclude);
        }
    } catch (const rigidity::respath::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
