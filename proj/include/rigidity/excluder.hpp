#ifndef RIGIDITY_EXCLUDER_HPP
#define RIGIDITY_EXCLUDER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/multipoly.hpp"
#include "rigidity/numeric.hpp"
#include "rigidity/respath.hpp"

namespace rigidity::excluder {

// A concrete valuation scenario: resolution graph, threshold n of the mobile
// system, its multiplicities nu at every stage, and the coefficient lambda of
// the vertical cycle on the carrying fibre divisor.
struct NFInstance {
    respath::ResolutionGraph graph;
    Int n = 1;
    std::vector<Rat> nu;  // one per stage, positive
    Rat lambda = 0;       // >= 0
};

void validate_instance(const NFInstance& inst);

// excess = ord(system) - n * discrepancy; the scenario is a maximal
// singularity exactly when this is positive.
Rat excess(const NFInstance& inst);
Rat fibre_order(const NFInstance& inst);  // order of the fibre divisor along the valuation
// 2 * n * excess > lambda * fibre_order.
bool is_supermaximal(const NFInstance& inst);

// The multiplicity bookkeeping attached to the lower stages: per-stage
// multiplicities m_i, the cross terms m_{i,j}, and the exceptional degrees d_i.
struct MultiplicityData {
    std::vector<Rat> m;                   // index i-1 holds m_i, i = 1..L
    std::vector<std::vector<Rat>> cross;  // cross[j-1][i-1] holds m_{i,j}, i < j <= L
    std::vector<Rat> d;                   // index i-1 holds d_i
};

// Verifies mu_i nu_i^2 + d_i = m_i + sum_{j<i} m_{j,i} for i <= L and the
// tail estimate d_L >= sum_{i>L} nu_i^2; returns one message per violation.
std::vector<std::string> counting_system_check(const NFInstance& inst,
                                               const MultiplicityData& data);

// Both sides of the key counting inequality: sum r_i m_i over the lower part
// versus sum r_i mu_i nu_i^2 over all stages. No verdict is imposed.
std::pair<Rat, Rat> counting_inequality_sides(const NFInstance& inst, const std::vector<Rat>& m);

// Minimize sum r_i mu_i nu_i^2 over the hyperplane sum r_i nu_i = c:
// nu_i = theta / mu_i with theta = c / sum(r_i / mu_i), value c^2 / sum(r_i / mu_i).
struct QPResult {
    std::vector<Rat> nu_star;
    Rat min_value;
};
QPResult qp_minimize(const std::vector<Rat>& r, const std::vector<int>& mu, const Rat& c);

// Pigeonhole input: several singularities grouped by the fibre divisor over
// which they sit, with the aggregate inequality assembled upstream.
struct PigeonholeGroup {
    std::string label;
    Rat lambda = 0;
};
struct PigeonholeSingularity {
    std::string label;
    std::string group;
    Rat eps = 0;  // excess, positive
    Rat deg = 0;  // intersection with the test curve, positive
    Rat t = 1;    // order of the carrying divisor, >= 1
};
struct PigeonholeInstance {
    Int n = 1;
    Rat y_c = 0;  // intersection of the base divisor with the test curve, >= 0
    std::vector<PigeonholeGroup> groups;
    std::vector<PigeonholeSingularity> singularities;
};
struct PigeonholeResult {
    bool found = false;
    std::string label;
    std::string diagnostic;
};

// Under 2n * sum(eps * deg) > sum_T lambda_T * sum(t * deg), some singularity
// satisfies 2n*eps > lambda*t termwise; returns the first such (input order).
PigeonholeResult find_supermaximal(const PigeonholeInstance& inst);

// One certified step of the symbolic contradiction chain.
struct ChainStep {
    std::string name;
    std::string claim;
    std::string difference;        // canonical polynomial
    std::string certificate_kind;  // zero | nonneg-monomials | margin-multiple | perfect-square
    std::string certificate;
    bool certified = false;
};
struct ChainReport {
    std::vector<ChainStep> steps;
    bool all_certified() const;
};

// Verifies the four steps of the exclusion chain as exact polynomial
// identities over (n, e, Sigma_l, Sigma_u, Sigma_sing, Sigma_ns, lam, t):
//  (a) the multiplicity bounds plus supermaximality cap the counting LHS,
//  (b) clearing denominators is an exact rearrangement under the partition
//      identity Sigma_sing + Sigma_ns = Sigma_l + Sigma_u,
//  (c) dropping the singular part leaves 2ne*Sigma_u > n^2*Sigma_u^2 + e^2,
//  (d) the terminal difference factors as (n*Sigma_u - e)^2.
ChainReport chain_verify();

struct ExcludeReport {
    std::string status;  // "infeasible" | "not-supermaximal"
    Rat excess_value;
    Rat fibre_order_value;
    Rat supermax_margin;  // 2n*excess - lambda*fibre_order
    Int sigma_lower, sigma_upper, sigma_singular, sigma_nonsingular;
    Rat counting_lhs_upper;  // 4n^2 Sigma_l + 4ne
    Rat counting_rhs_lower;  // 2(2n Sigma_l + n Sigma_u + e)^2 / (Sigma_sing + 2 Sigma_ns)
    Rat qp_rhs_lower;        // c^2 / sum(r_i/mu_i) with c = n*a(E) + e
    Rat terminal_square;     // (n Sigma_u - e)^2
    std::string detail;
};

// Instantiates the chain with the instance's exact sigma-values. Every valid
// supermaximal instance comes back "infeasible".
ExcludeReport exclude(const NFInstance& inst);

// Seeded generator for the property sweeps; when force_supermaximal is set the
// result always satisfies the supermaximality inequality.
struct RandomInstanceParams {
    respath::RandomGraphParams graph;
    int n_max = 9;
    bool force_supermaximal = true;
};
NFInstance random_instance(const RandomInstanceParams& params, std::uint64_t seed);

// JSON surfaces (schemas shared with the CLI).
nlohmann::json nf_to_json(const NFInstance& inst);
NFInstance nf_from_json(const nlohmann::json& doc);
PigeonholeInstance pigeonhole_from_json(const nlohmann::json& doc);
nlohmann::json chain_report_to_json(const ChainReport& report);
nlohmann::json exclude_report_to_json(const ExcludeReport& report);

}  // namespace rigidity::excluder

#endif
