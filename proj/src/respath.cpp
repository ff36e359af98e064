#include "rigidity/respath.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "rigidity/rng.hpp"

namespace rigidity::respath {

int ResolutionGraph::L() const {
    int result = 0;
    for (int i = 1; i <= K(); ++i)
        if (vertices[i - 1].level <= fibre_dim - 2) result = i;
    return result;
}

int ResolutionGraph::L_sing() const {
    int result = 0;
    const int lower_max = L();
    for (int i = 1; i <= lower_max; ++i)
        if (vertices[i - 1].mu == 2) result = i;
    return result;
}

int ResolutionGraph::delta(int i) const { return vertices[i - 1].codim - vertices[i - 1].mu; }

std::vector<std::vector<GraphEdge>> ResolutionGraph::in_edges() const {
    std::vector<std::vector<GraphEdge>> in(K());
    for (const GraphEdge& e : edges) {
        if (e.to >= 1 && e.to <= K()) in[e.to - 1].push_back(e);
    }
    return in;
}

std::vector<Violation> validate_graph(const ResolutionGraph& g) {
    std::vector<Violation> out;
    auto flag = [&](std::string rule, std::string where, std::string detail) {
        out.push_back({std::move(rule), std::move(where), std::move(detail)});
    };

    const int K = g.K();
    if (K < 1) {
        flag("vertex-count", "graph", "need at least one blow-up");
        return out;
    }
    if (g.fibre_dim < 2) flag("fibre-dim", "graph", "fibre dimension must be at least 2");
    if (g.l_fibre < 0 || g.l_fibre > K)
        flag("l-fibre-range", "graph", "l_fibre must lie in 0..K");

    const int M = g.fibre_dim;
    for (int i = 1; i <= K; ++i) {
        const GraphVertex& v = g.vertices[i - 1];
        const std::string where = "vertex " + std::to_string(i);
        if (v.level < 0 || v.level > M - 1) flag("level-range", where, "level must lie in 0..M-1");
        if (v.mu != 1 && v.mu != 2) flag("mu-range", where, "mu must be 1 or 2");
        if (v.codim < 2) flag("codim-min", where, "centre codimension must be at least 2");
        if (v.level >= M - 2 && v.mu != 1)
            flag("upper-mu", where, "stages at levels M-2 and M-1 have mu = 1");
        if (v.level == M - 1 && v.codim != 2)
            flag("upper-codim", where, "upper-part centres have codimension 2");
        if (v.level <= M - 2) {
            int need = v.mu == 2 ? 4 : 3;
            if (v.codim < need)
                flag("lower-delta", where,
                     "lower-part centre needs codim >= " + std::to_string(need) +
                         " (elementary discrepancy >= 2)");
        }
        if (i >= 2 && v.mu == 2 && g.vertices[i - 2].mu != 2)
            flag("sing-prefix", where, "singular stages must form an initial prefix");
        // Each centre maps onto the previous one, so its dimension cannot drop.
        if (i >= 2 && v.level < g.vertices[i - 2].level)
            flag("level-monotone", where, "centre levels must be non-decreasing along the chain");
        if (i <= g.l_fibre && v.gamma != 1 && v.gamma != 2)
            flag("gamma-range", where, "gamma must be 1 or 2 for stages on the fibre divisor");
    }
    if (g.vertices[K - 1].level != M - 1)
        flag("top-upper", "vertex " + std::to_string(K), "the final stage must be upper (level M-1)");

    const int L_sing = g.L_sing();
    std::set<std::pair<int, int>> seen;
    for (const GraphEdge& e : g.edges) {
        const std::string where =
            "edge " + std::to_string(e.from) + "->" + std::to_string(e.to);
        if (e.from < 1 || e.from > K || e.to < 1 || e.to > K) {
            flag("edge-range", where, "endpoints must be vertices");
            continue;
        }
        if (e.from <= e.to) flag("edge-order", where, "edges must point from later to earlier stage");
        if (!seen.insert({e.from, e.to}).second) flag("edge-dup", where, "duplicate edge");
        if (e.weight != 1 && e.weight != 2) flag("weight-range", where, "weight must be 1 or 2");
        if (e.weight == 2 && !(e.from > L_sing && e.to <= L_sing))
            flag("weight2-cross", where,
                 "weight-2 edge into non-singular stage (allowed only from above L_sing into "
                 "1..L_sing)");
    }

    // Every stage below the top must be reachable from the top.
    std::vector<char> reach(K + 1, 0);
    reach[K] = 1;
    for (int i = K; i >= 1; --i) {
        if (!reach[i]) continue;
        for (const GraphEdge& e : g.edges)
            if (e.from == i && e.to >= 1 && e.to <= K) reach[e.to] = 1;
    }
    for (int i = 1; i < K; ++i)
        if (!reach[i])
            flag("reachability", "vertex " + std::to_string(i),
                 "not reachable from the top vertex");
    return out;
}

void require_valid(const ResolutionGraph& g) {
    std::vector<Violation> violations = validate_graph(g);
    if (violations.empty()) return;
    std::string msg = "invalid resolution graph:";
    for (std::size_t i = 0; i < violations.size() && i < 3; ++i)
        msg += " [" + violations[i].rule + " at " + violations[i].where + "] " +
               violations[i].detail + ";";
    if (violations.size() > 3) msg += " (+" + std::to_string(violations.size() - 3) + " more)";
    throw std::invalid_argument(msg);
}

namespace {

std::vector<Int> weighted_counts(const ResolutionGraph& g, bool use_weights) {
    require_valid(g);
    const int K = g.K();
    std::vector<Int> counts(K, 0);
    counts[K - 1] = 1;
    auto in = g.in_edges();
    for (int i = K - 1; i >= 1; --i) {
        Int total = 0;
        for (const GraphEdge& e : in[i - 1])
            total += (use_weights ? Int(e.weight) : Int(1)) * counts[e.from - 1];
        counts[i - 1] = total;
    }
    return counts;
}

}  // namespace

std::vector<Int> path_counts(const ResolutionGraph& g) { return weighted_counts(g, false); }

std::vector<Int> r_coeffs(const ResolutionGraph& g) { return weighted_counts(g, true); }

Int PullbackExpansion::top(int K) const {
    auto it = coeffs.find(K);
    return it == coeffs.end() ? Int(0) : it->second;
}

PullbackExpansion forward_pullback(const ResolutionGraph& g, int stage) {
    require_valid(g);
    if (stage < 1 || stage > g.K())
        throw std::invalid_argument("forward_pullback: stage out of range");
    PullbackExpansion expansion;
    expansion.coeffs[stage] = 1;
    // Each later blow-up j pulls the accumulated class back; the new
    // exceptional divisor picks up the weighted sum over edges out of j into
    // stages already present in the expansion.
    for (int j = stage + 1; j <= g.K(); ++j) {
        Int added = 0;
        for (const GraphEdge& e : g.edges) {
            if (e.from != j) continue;
            auto it = expansion.coeffs.find(e.to);
            if (it != expansion.coeffs.end()) added += Int(e.weight) * it->second;
        }
        if (added != 0) expansion.coeffs[j] = added;
    }
    return expansion;
}

bool compatibility_check(const ResolutionGraph& g, const std::map<int, Rat>& a) {
    require_valid(g);
    const int M = g.fibre_dim;
    auto lower = [&](int i) { return g.vertices[i - 1].level <= M - 2; };
    for (int i = 1; i <= g.K(); ++i) {
        if (!lower(i)) continue;
        if (!a.count(i))
            throw std::invalid_argument("compatibility_check: a missing lower vertex " +
                                        std::to_string(i));
    }
    for (int i = 1; i <= g.K(); ++i) {
        if (!lower(i)) continue;
        Rat incoming = 0;
        for (const GraphEdge& e : g.edges)
            if (e.to == i && lower(e.from)) incoming += a.at(e.from);
        if (a.at(i) < incoming) return false;
    }
    return true;
}

Rat ord_linear_functionals(const ResolutionGraph& g, OrdMode mode, const std::vector<Rat>& nu) {
    std::vector<Int> r = r_coeffs(g);
    Rat total = 0;
    switch (mode) {
        case OrdMode::sigma:
            if (nu.size() != static_cast<std::size_t>(g.K()))
                throw std::invalid_argument("ord(sigma): need one multiplicity per stage");
            for (int i = 1; i <= g.K(); ++i) total += Rat(r[i - 1]) * nu[i - 1];
            return total;
        case OrdMode::fibre:
            for (int i = 1; i <= g.l_fibre; ++i)
                total += Rat(r[i - 1]) * g.vertices[i - 1].gamma;
            return total;
        case OrdMode::canonical:
            for (int i = 1; i <= g.K(); ++i) total += Rat(r[i - 1]) * g.delta(i);
            return total;
    }
    throw std::logic_error("ord_linear_functionals: unknown mode");
}

SigmaPartition sigma_partition(const ResolutionGraph& g) {
    std::vector<Int> r = r_coeffs(g);
    const int L = g.L();
    const int L_sing = g.L_sing();
    SigmaPartition part{0, 0, 0, 0};
    for (int i = 1; i <= g.K(); ++i) {
        if (i <= L)
            part.lower += r[i - 1];
        else
            part.upper += r[i - 1];
        if (i <= L_sing)
            part.singular += r[i - 1];
        else
            part.nonsingular += r[i - 1];
    }
    return part;
}

ResolutionGraph random_graph(const RandomGraphParams& params, std::uint64_t seed) {
    if (params.K < 1) throw std::invalid_argument("random_graph: K must be >= 1");
    if (params.fibre_dim < 2) throw std::invalid_argument("random_graph: fibre_dim must be >= 2");
    SplitMix64 rng(seed);
    const int K = params.K;
    const int M = params.fibre_dim;

    ResolutionGraph g;
    g.fibre_dim = M;
    g.vertices.resize(K);

    // Singular stages form an initial prefix and need level <= M-3.
    int sing = 0;
    if (M >= 3 && params.max_singular > 0 && K >= 2)
        sing = static_cast<int>(rng.below(std::min(params.max_singular, K - 1) + 1));

    // Centre levels are non-decreasing along the chain; sample and sort.
    std::vector<int> levels(K);
    levels[K - 1] = M - 1;
    for (int i = 1; i < K; ++i)
        levels[i - 1] = static_cast<int>(i <= sing ? rng.below(M - 2) : rng.below(M));
    std::sort(levels.begin(), levels.begin() + sing);
    std::sort(levels.begin() + sing, levels.end() - 1);
    for (int i = sing + 1; i < K; ++i)
        if (sing > 0 && levels[i - 1] < levels[sing - 1]) levels[i - 1] = levels[sing - 1];

    for (int i = 1; i <= K; ++i) {
        GraphVertex& v = g.vertices[i - 1];
        v.level = levels[i - 1];
        v.mu = i <= sing ? 2 : 1;
        v.codim = M + 1 - v.level;  // geometric codimension of the centre
        if (v.level == M - 1) v.codim = 2;
    }

    g.l_fibre = params.l_fibre >= 0 ? std::min(params.l_fibre, K)
                                    : static_cast<int>(rng.below(K + 1));
    for (int i = 1; i <= g.l_fibre; ++i) g.vertices[i - 1].gamma = 1 + static_cast<int>(rng.below(2));

    const int L_sing = sing;  // by construction
    for (int to = 1; to < K; ++to) {
        bool has_in = false;
        for (int from = to + 1; from <= K; ++from) {
            bool take = (params.chain && from == to + 1) || rng.chance_pct(params.edge_density_pct);
            if (!take) continue;
            int weight = 1;
            if (from > L_sing && to <= L_sing && rng.chance_pct(params.weight2_pct)) weight = 2;
            g.edges.push_back({from, to, weight});
            has_in = true;
        }
        if (!has_in) {
            int from = to + 1 + static_cast<int>(rng.below(K - to));
            int weight = 1;
            if (from > L_sing && to <= L_sing && rng.chance_pct(params.weight2_pct)) weight = 2;
            g.edges.push_back({from, to, weight});
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });

    require_valid(g);
    return g;
}

namespace {

int require_int_field(const nlohmann::json& doc, const std::string& path, const std::string& key) {
    if (!doc.contains(key)) throw SchemaError(path + "." + key + ": missing");
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) throw SchemaError(path + "." + key + ": must be an integer");
    return v.get<int>();
}

}  // namespace

nlohmann::json graph_to_json(const ResolutionGraph& g) {
    nlohmann::json doc;
    doc["M"] = g.fibre_dim;
    doc["L_fibre"] = g.l_fibre;
    doc["vertices"] = nlohmann::json::array();
    for (int i = 1; i <= g.K(); ++i) {
        const GraphVertex& v = g.vertices[i - 1];
        nlohmann::json jv;
        jv["level"] = v.level;
        jv["mu"] = v.mu;
        jv["codim"] = v.codim;
        if (i <= g.l_fibre) jv["gamma"] = v.gamma;
        doc["vertices"].push_back(jv);
    }
    doc["edges"] = nlohmann::json::array();
    for (const GraphEdge& e : g.edges) {
        nlohmann::json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["weight"] = e.weight;
        doc["edges"].push_back(je);
    }
    return doc;
}

ResolutionGraph graph_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw SchemaError("graph: must be an object");
    ResolutionGraph g;
    g.fibre_dim = require_int_field(doc, "graph", "M");
    g.l_fibre = require_int_field(doc, "graph", "L_fibre");
    if (!doc.contains("vertices") || !doc.at("vertices").is_array())
        throw SchemaError("graph.vertices: missing or not an array");
    if (!doc.contains("edges") || !doc.at("edges").is_array())
        throw SchemaError("graph.edges: missing or not an array");

    int index = 0;
    for (const auto& jv : doc.at("vertices")) {
        const std::string path = "graph.vertices[" + std::to_string(index) + "]";
        if (!jv.is_object()) throw SchemaError(path + ": must be an object");
        GraphVertex v;
        v.level = require_int_field(jv, path, "level");
        v.mu = require_int_field(jv, path, "mu");
        v.codim = require_int_field(jv, path, "codim");
        if (jv.contains("gamma")) v.gamma = require_int_field(jv, path, "gamma");
        g.vertices.push_back(v);
        ++index;
    }
    index = 0;
    for (const auto& je : doc.at("edges")) {
        const std::string path = "graph.edges[" + std::to_string(index) + "]";
        if (!je.is_object()) throw SchemaError(path + ": must be an object");
        GraphEdge e;
        e.from = require_int_field(je, path, "from");
        e.to = require_int_field(je, path, "to");
        e.weight = require_int_field(je, path, "weight");
        if (e.weight != 1 && e.weight != 2)
            throw SchemaError(path + ".weight: must be 1 or 2");
        g.edges.push_back(e);
        ++index;
    }
    return g;
}

}  // namespace rigidity::respath
