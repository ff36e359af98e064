#include "rigidity/excluder.hpp"

#include <algorithm>
#include <stdexcept>

#include "rigidity/rng.hpp"

namespace rigidity::excluder {

using respath::OrdMode;

void validate_instance(const NFInstance& inst) {
    respath::require_valid(inst.graph);
    if (inst.n < 1) throw std::invalid_argument("instance: n must be a positive integer");
    if (inst.nu.size() != static_cast<std::size_t>(inst.graph.K()))
        throw std::invalid_argument("instance: need one nu per stage");
    for (std::size_t i = 0; i < inst.nu.size(); ++i)
        if (inst.nu[i] <= 0)
            throw std::invalid_argument("instance: nu[" + std::to_string(i + 1) +
                                        "] must be positive");
    if (inst.lambda < 0) throw std::invalid_argument("instance: lambda must be non-negative");
}

Rat excess(const NFInstance& inst) {
    validate_instance(inst);
    Rat ord_sigma = respath::ord_linear_functionals(inst.graph, OrdMode::sigma, inst.nu);
    Rat discrepancy = respath::ord_linear_functionals(inst.graph, OrdMode::canonical);
    return ord_sigma - Rat(inst.n) * discrepancy;
}

Rat fibre_order(const NFInstance& inst) {
    return respath::ord_linear_functionals(inst.graph, OrdMode::fibre);
}

bool is_supermaximal(const NFInstance& inst) {
    return Rat(2) * Rat(inst.n) * excess(inst) > inst.lambda * fibre_order(inst);
}

std::vector<std::string> counting_system_check(const NFInstance& inst,
                                               const MultiplicityData& data) {
    validate_instance(inst);
    const int L = inst.graph.L();
    const int K = inst.graph.K();
    if (data.m.size() != static_cast<std::size_t>(L) ||
        data.d.size() != static_cast<std::size_t>(L) ||
        data.cross.size() != static_cast<std::size_t>(L))
        throw std::invalid_argument("counting_system_check: data sized for L = " +
                                    std::to_string(L));
    for (int j = 1; j <= L; ++j)
        if (data.cross[j - 1].size() + 1 != static_cast<std::size_t>(j))
            throw std::invalid_argument("counting_system_check: cross row " + std::to_string(j) +
                                        " must hold entries for i < j");

    std::vector<std::string> violations;
    for (int i = 1; i <= L; ++i) {
        Rat lhs = Rat(inst.graph.vertices[i - 1].mu) * inst.nu[i - 1] * inst.nu[i - 1] +
                  data.d[i - 1];
        Rat rhs = data.m[i - 1];
        for (int j = 1; j < i; ++j) rhs += data.cross[i - 1][j - 1];
        if (lhs != rhs)
            violations.push_back("equality at stage " + std::to_string(i) + ": mu*nu^2 + d = " +
                                 to_string(lhs) + " but multiplicities sum to " + to_string(rhs));
    }
    if (L >= 1) {
        Rat tail = 0;
        for (int i = L + 1; i <= K; ++i) tail += inst.nu[i - 1] * inst.nu[i - 1];
        if (data.d[L - 1] < tail)
            violations.push_back("tail estimate: d_L = " + to_string(data.d[L - 1]) +
                                 " < sum of upper nu^2 = " + to_string(tail));
    }
    return violations;
}

std::pair<Rat, Rat> counting_inequality_sides(const NFInstance& inst, const std::vector<Rat>& m) {
    validate_instance(inst);
    const int L = inst.graph.L();
    if (m.size() != static_cast<std::size_t>(L))
        throw std::invalid_argument("counting_inequality_sides: need one m per lower stage");
    std::vector<Int> r = respath::r_coeffs(inst.graph);
    Rat lhs = 0;
    for (int i = 1; i <= L; ++i) lhs += Rat(r[i - 1]) * m[i - 1];
    Rat rhs = 0;
    for (int i = 1; i <= inst.graph.K(); ++i)
        rhs += Rat(r[i - 1]) * inst.graph.vertices[i - 1].mu * inst.nu[i - 1] * inst.nu[i - 1];
    return {lhs, rhs};
}

QPResult qp_minimize(const std::vector<Rat>& r, const std::vector<int>& mu, const Rat& c) {
    if (r.empty()) throw std::invalid_argument("qp_minimize: empty instance");
    if (mu.size() != r.size()) throw std::invalid_argument("qp_minimize: r/mu size mismatch");
    if (c <= 0) throw std::invalid_argument("qp_minimize: c must be positive");
    Rat denom = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] <= 0) throw std::invalid_argument("qp_minimize: r must be positive");
        if (mu[i] != 1 && mu[i] != 2) throw std::invalid_argument("qp_minimize: mu must be 1 or 2");
        denom += r[i] / Rat(mu[i]);
    }
    Rat theta = c / denom;
    QPResult result;
    result.nu_star.reserve(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) result.nu_star.push_back(theta / mu[i]);
    result.min_value = c * c / denom;
    return result;
}

PigeonholeResult find_supermaximal(const PigeonholeInstance& inst) {
    if (inst.n < 1) return {false, "", "n must be a positive integer"};
    if (inst.y_c < 0) return {false, "", "base intersection number must be non-negative"};
    std::map<std::string, Rat> lambda_of;
    for (const auto& group : inst.groups) {
        if (group.lambda < 0)
            return {false, "", "group " + group.label + ": lambda must be non-negative"};
        lambda_of[group.label] = group.lambda;
    }
    Rat lhs = 0, rhs = 0;
    for (const auto& s : inst.singularities) {
        if (s.eps <= 0) return {false, "", s.label + ": excess must be positive"};
        if (s.deg <= 0) return {false, "", s.label + ": curve degree must be positive"};
        if (s.t < 1) return {false, "", s.label + ": divisor order must be at least 1"};
        auto it = lambda_of.find(s.group);
        if (it == lambda_of.end()) return {false, "", s.label + ": unknown group " + s.group};
        lhs += s.eps * s.deg;
        rhs += it->second * s.t * s.deg;
    }
    lhs *= Rat(2) * Rat(inst.n);
    if (lhs <= rhs)
        return {false, "",
                "aggregate inequality fails: 2n*sum(eps*deg) = " + to_string(lhs) +
                    " <= sum(lambda*t*deg) = " + to_string(rhs)};

    // Every singularity appears once on each side, so some term must beat its
    // counterpart; deg > 0 cancels.
    for (const auto& s : inst.singularities) {
        if (Rat(2) * Rat(inst.n) * s.eps > lambda_of.at(s.group) * s.t)
            return {true, s.label, ""};
    }
    return {false, "", "internal: aggregate held but no termwise witness (unreachable)"};
}

bool ChainReport::all_certified() const {
    if (steps.empty()) return false;
    for (const auto& s : steps)
        if (!s.certified) return false;
    return true;
}

ChainReport chain_verify() {
    auto symbols = std::make_shared<const std::vector<std::string>>(std::vector<std::string>{
        "n", "e", "Sigma_l", "Sigma_u", "Sigma_sing", "Sigma_ns", "lam", "t"});
    auto C = [&](long long v) { return MultiPoly::constant(symbols, Rat(v)); };
    auto V = [&](const char* name) { return MultiPoly::var(symbols, name); };

    MultiPoly n = V("n"), e = V("e"), sl = V("Sigma_l"), su = V("Sigma_u");
    MultiPoly ss = V("Sigma_sing"), sn = V("Sigma_ns"), lam = V("lam"), t = V("t");

    ChainReport report;

    {
        // (a) counting LHS <= 4n^2 Sigma_l + 2 lam t < 4n^2 Sigma_l + 4ne:
        // the gap is exactly twice the supermaximality margin 2ne - lam*t.
        MultiPoly target = C(4) * n * n * sl + C(4) * n * e;
        MultiPoly bound = C(4) * n * n * sl + C(2) * lam * t;
        MultiPoly diff = target - bound;
        MultiPoly margin = C(2) * n * e - lam * t;
        bool ok = (diff - margin.scaled(2)).is_zero();
        report.steps.push_back(
            {"multiplicity-bounds",
             "horizontal part <= 4n^2*Sigma_l, vertical part <= 2*lam*t, and supermaximality "
             "(2ne > lam*t) make the counting LHS < 4n^2*Sigma_l + 4ne",
             diff.str(), "margin-multiple",
             "difference = 2*(" + margin.str() + "), a positive multiple of the supermaximality "
             "margin",
             ok});
    }

    // The expanded inequality produced by clearing the denominator
    // Sigma_sing + 2*Sigma_ns out of the quadratic lower bound.
    MultiPoly expanded_lhs = C(2) * n * n * sl * sn + C(2) * n * e * sn;
    MultiPoly expanded_rhs = C(2) * n * n * sl * sl + C(2) * n * n * sl * su + n * n * su * su +
                             C(2) * n * e * sl + e * e;

    {
        // (b) clearing denominators is an exact rearrangement once
        // Sigma_sing is eliminated via the partition identity.
        MultiPoly cleared = (C(4) * n * n * sl + C(4) * n * e) * (ss + sn.scaled(2)) -
                            (C(2) * n * sl + n * su + e).pow(2).scaled(2);
        MultiPoly diff = cleared - (expanded_lhs - expanded_rhs).scaled(2);
        MultiPoly eliminated = diff.substitute("Sigma_sing", sl + su - sn);
        bool ok = eliminated.is_zero();
        report.steps.push_back(
            {"clear-denominators",
             "(4n^2*Sigma_l + 4ne)(Sigma_sing + 2*Sigma_ns) - 2(2n*Sigma_l + n*Sigma_u + e)^2 "
             "equals twice the expanded difference under Sigma_sing = Sigma_l + Sigma_u - "
             "Sigma_ns",
             eliminated.str(), "zero", "difference eliminates to the zero polynomial", ok});
    }

    {
        // (c) replacing Sigma_ns by Sigma_l + Sigma_u only increases the
        // expanded LHS; the slack is a non-negative combination.
        MultiPoly slack = (C(2) * n * n * sl + C(2) * n * e) * (sl + su) - expanded_lhs;
        MultiPoly slack_elim = slack.substitute("Sigma_ns", sl + su - ss);
        bool nonneg = slack_elim.nonneg_combination();
        MultiPoly reduced = (C(2) * n * n * sl + C(2) * n * e) * (sl + su) - expanded_rhs;
        MultiPoly target = C(2) * n * e * su - n * n * su * su - e * e;
        bool match = (reduced - target).is_zero();
        report.steps.push_back(
            {"drop-singular-part",
             "Sigma_ns <= Sigma_l + Sigma_u turns the expanded inequality into "
             "2ne*Sigma_u > n^2*Sigma_u^2 + e^2",
             slack_elim.str(), "nonneg-monomials",
             "substitution slack = " + slack_elim.str() +
                 " (non-negative coefficients in non-negative symbols); reduced difference "
                 "equals " +
                 target.str(),
             nonneg && match});
    }

    {
        // (d) the terminal difference is a perfect square, so the strict
        // inequality required by the chain cannot hold.
        MultiPoly diff = n * n * su * su + e * e - C(2) * n * e * su;
        MultiPoly root = n * su - e;
        bool ok = (diff - root.pow(2)).is_zero();
        report.steps.push_back({"terminal-square",
                                "n^2*Sigma_u^2 + e^2 - 2ne*Sigma_u = (n*Sigma_u - e)^2 >= 0, so "
                                "2ne*Sigma_u > n^2*Sigma_u^2 + e^2 is infeasible",
                                diff.str(), "perfect-square",
                                "difference = (" + root.str() + ")^2", ok});
    }

    return report;
}

ExcludeReport exclude(const NFInstance& inst) {
    validate_instance(inst);
    ExcludeReport report;
    report.excess_value = excess(inst);
    report.fibre_order_value = fibre_order(inst);
    report.supermax_margin =
        Rat(2) * Rat(inst.n) * report.excess_value - inst.lambda * report.fibre_order_value;

    respath::SigmaPartition part = respath::sigma_partition(inst.graph);
    report.sigma_lower = part.lower;
    report.sigma_upper = part.upper;
    report.sigma_singular = part.singular;
    report.sigma_nonsingular = part.nonsingular;

    if (report.supermax_margin <= 0) {
        report.status = "not-supermaximal";
        report.detail = "2n*excess = " + to_string(Rat(2) * Rat(inst.n) * report.excess_value) +
                        " does not exceed lambda*fibre_order = " +
                        to_string(inst.lambda * report.fibre_order_value);
        return report;
    }

    const Rat n(inst.n);
    const Rat e = report.excess_value;
    const Rat sl(part.lower), su(part.upper), ss(part.singular), sn(part.nonsingular);

    report.counting_lhs_upper = Rat(4) * n * n * sl + Rat(4) * n * e;
    Rat cbar = Rat(2) * n * sl + n * su + e;
    report.counting_rhs_lower = Rat(2) * cbar * cbar / (ss + Rat(2) * sn);

    std::vector<Int> r = respath::r_coeffs(inst.graph);
    std::vector<Rat> r_rat(r.begin(), r.end());
    std::vector<int> mu;
    for (const auto& v : inst.graph.vertices) mu.push_back(v.mu);
    Rat c = n * respath::ord_linear_functionals(inst.graph, OrdMode::canonical) + e;
    report.qp_rhs_lower = qp_minimize(r_rat, mu, c).min_value;

    Rat root = n * su - e;
    report.terminal_square = root * root;

    report.status = "infeasible";
    report.detail =
        "feasibility would need the counting LHS < " + to_string(report.counting_lhs_upper) +
        " and >= " + to_string(report.counting_rhs_lower) +
        "; the chain reduces this to 2ne*Sigma_u > n^2*Sigma_u^2 + e^2, i.e. (n*Sigma_u - e)^2 " +
        "= " + to_string(report.terminal_square) + " < 0";
    return report;
}

NFInstance random_instance(const RandomInstanceParams& params, std::uint64_t seed) {
    NFInstance inst;
    inst.graph = respath::random_graph(params.graph, SplitMix64::derive(seed, 1));
    SplitMix64 rng(SplitMix64::derive(seed, 2));
    inst.n = 1 + rng.below(std::max(1, params.n_max));

    // nu_i = n*delta_i + slack keeps the excess positive and the instance a
    // maximal singularity by construction.
    const int K = inst.graph.K();
    inst.nu.reserve(K);
    for (int i = 1; i <= K; ++i) {
        Rat slack(rng.range(0, 8), 1 + rng.below(4));
        inst.nu.push_back(Rat(inst.n) * inst.graph.delta(i) + slack);
    }
    // At least one stage strictly above the boundary.
    inst.nu[0] += Rat(1, 2);

    Rat t = fibre_order(inst);
    if (params.force_supermaximal) {
        if (t == 0 || rng.chance_pct(20)) {
            inst.lambda = 0;  // the lambda-free branch
        } else {
            // lambda strictly below 2n*excess / fibre_order.
            Rat cap = Rat(2) * Rat(inst.n) * excess(inst) / t;
            inst.lambda = cap * Rat(1 + rng.below(7), 8);
        }
    } else {
        inst.lambda = Rat(rng.range(0, 5));
    }
    return inst;
}

namespace {

Rat rat_field(const nlohmann::json& doc, const std::string& path, const std::string& key) {
    if (!doc.contains(key)) throw respath::SchemaError(path + "." + key + ": missing");
    const auto& v = doc.at(key);
    if (v.is_number_integer()) return Rat(v.get<long long>());
    if (v.is_string()) {
        try {
            return parse_rat(v.get<std::string>());
        } catch (const std::exception&) {
            throw respath::SchemaError(path + "." + key + ": not a rational");
        }
    }
    throw respath::SchemaError(path + "." + key + ": must be an integer or a 'p/q' string");
}

}  // namespace

nlohmann::json nf_to_json(const NFInstance& inst) {
    nlohmann::json doc;
    doc["graph"] = respath::graph_to_json(inst.graph);
    doc["n"] = to_string(inst.n);
    doc["nu"] = nlohmann::json::array();
    for (const Rat& v : inst.nu) doc["nu"].push_back(to_string(v));
    doc["lambda"] = to_string(inst.lambda);
    return doc;
}

NFInstance nf_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw respath::SchemaError("instance: must be an object");
    if (!doc.contains("graph")) throw respath::SchemaError("instance.graph: missing");
    NFInstance inst;
    inst.graph = respath::graph_from_json(doc.at("graph"));
    Rat n = rat_field(doc, "instance", "n");
    if (denominator(n) != 1) throw respath::SchemaError("instance.n: must be an integer");
    inst.n = numerator(n);
    if (!doc.contains("nu") || !doc.at("nu").is_array())
        throw respath::SchemaError("instance.nu: missing or not an array");
    int index = 0;
    for (const auto& v : doc.at("nu")) {
        nlohmann::json wrap;
        wrap["value"] = v;
        inst.nu.push_back(rat_field(wrap, "instance.nu[" + std::to_string(index) + "]", "value"));
        ++index;
    }
    inst.lambda = rat_field(doc, "instance", "lambda");
    return inst;
}

PigeonholeInstance pigeonhole_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw respath::SchemaError("pigeonhole: must be an object");
    PigeonholeInstance inst;
    Rat n = rat_field(doc, "pigeonhole", "n");
    if (denominator(n) != 1) throw respath::SchemaError("pigeonhole.n: must be an integer");
    inst.n = numerator(n);
    inst.y_c = doc.contains("Y_C") ? rat_field(doc, "pigeonhole", "Y_C") : Rat(0);
    if (!doc.contains("groups") || !doc.at("groups").is_array())
        throw respath::SchemaError("pigeonhole.groups: missing or not an array");
    int index = 0;
    for (const auto& jg : doc.at("groups")) {
        const std::string path = "pigeonhole.groups[" + std::to_string(index) + "]";
        if (!jg.contains("label") || !jg.at("label").is_string())
            throw respath::SchemaError(path + ".label: missing or not a string");
        inst.groups.push_back({jg.at("label").get<std::string>(), rat_field(jg, path, "lambda")});
        ++index;
    }
    if (!doc.contains("singularities") || !doc.at("singularities").is_array())
        throw respath::SchemaError("pigeonhole.singularities: missing or not an array");
    index = 0;
    for (const auto& js : doc.at("singularities")) {
        const std::string path = "pigeonhole.singularities[" + std::to_string(index) + "]";
        if (!js.contains("label") || !js.at("label").is_string())
            throw respath::SchemaError(path + ".label: missing or not a string");
        if (!js.contains("group") || !js.at("group").is_string())
            throw respath::SchemaError(path + ".group: missing or not a string");
        inst.singularities.push_back({js.at("label").get<std::string>(),
                                      js.at("group").get<std::string>(),
                                      rat_field(js, path, "eps"), rat_field(js, path, "deg"),
                                      rat_field(js, path, "t")});
        ++index;
    }
    return inst;
}

nlohmann::json chain_report_to_json(const ChainReport& report) {
    nlohmann::json doc;
    doc["steps"] = nlohmann::json::array();
    for (const auto& step : report.steps) {
        nlohmann::json js;
        js["name"] = step.name;
        js["claim"] = step.claim;
        js["difference"] = step.difference;
        js["certificate_kind"] = step.certificate_kind;
        js["certificate"] = step.certificate;
        js["certified"] = step.certified;
        doc["steps"].push_back(js);
    }
    doc["all_certified"] = report.all_certified();
    return doc;
}

nlohmann::json exclude_report_to_json(const ExcludeReport& report) {
    nlohmann::json doc;
    doc["status"] = report.status;
    doc["excess"] = to_string(report.excess_value);
    doc["fibre_order"] = to_string(report.fibre_order_value);
    doc["supermax_margin"] = to_string(report.supermax_margin);
    doc["sigma"] = {{"lower", to_string(report.sigma_lower)},
                    {"upper", to_string(report.sigma_upper)},
                    {"singular", to_string(report.sigma_singular)},
                    {"nonsingular", to_string(report.sigma_nonsingular)}};
    if (report.status == "infeasible") {
        doc["counting_lhs_upper"] = to_string(report.counting_lhs_upper);
        doc["counting_rhs_lower"] = to_string(report.counting_rhs_lower);
        doc["qp_rhs_lower"] = to_string(report.qp_rhs_lower);
        doc["terminal_square"] = to_string(report.terminal_square);
    }
    doc["detail"] = report.detail;
    return doc;
}

}  // namespace rigidity::excluder
