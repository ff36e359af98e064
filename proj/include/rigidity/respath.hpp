#ifndef RIGIDITY_RESPATH_HPP
#define RIGIDITY_RESPATH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rigidity/numeric.hpp"

#include <json.hpp>

namespace rigidity::respath {

// Vertex i of the resolution graph describes the i-th blow-up: the level of
// its centre (fibre-dimension stratum), the multiplicity mu of the ambient
// variety along the centre (2 at a quadratic singularity), the codimension of
// the centre, and gamma, the coefficient picked up by the fibre divisor
// (meaningful for i <= l_fibre only).
struct GraphVertex {
    int level = 0;
    int mu = 1;
    int codim = 2;
    int gamma = 0;
};

// Edge from > to carries weight 2 exactly when the later centre sits inside
// the singular locus of the earlier exceptional divisor.
struct GraphEdge {
    int from = 0;
    int to = 0;
    int weight = 1;
};

struct ResolutionGraph {
    int fibre_dim = 2;  // M
    int l_fibre = 0;    // largest stage whose centre lies on the fibre divisor
    std::vector<GraphVertex> vertices;  // vertices[i] is blow-up i+1
    std::vector<GraphEdge> edges;

    int K() const { return static_cast<int>(vertices.size()); }
    // Largest lower-part index (level <= M-2); 0 if the whole chain is upper.
    int L() const;
    // Largest singular stage (mu == 2); 0 if none.
    int L_sing() const;
    // Elementary discrepancy codim - mu of stage i (1-based).
    int delta(int i) const;
    // In-edges of each vertex: in_edges()[i] lists edges with to == i+1.
    std::vector<std::vector<GraphEdge>> in_edges() const;
};

struct Violation {
    std::string rule;
    std::string where;
    std::string detail;
};

std::vector<Violation> validate_graph(const ResolutionGraph& g);
void require_valid(const ResolutionGraph& g);  // throws invalid_argument on violations

// Plain path counts from the top vertex: result[i-1] = number of directed
// paths K -> i (1 for i == K).
std::vector<Int> path_counts(const ResolutionGraph& g);

// Weighted path counts r_i: r_K = 1, r_i = sum over in-edges (j -> i) of
// weight * r_j. These are the coefficients the valuation machinery uses.
std::vector<Int> r_coeffs(const ResolutionGraph& g);

// Stage-by-stage total-transform expansion of the i-th exceptional divisor in
// the exceptional basis at the top stage; its top coefficient must equal r_i.
struct PullbackExpansion {
    std::map<int, Int> coeffs;  // stage -> coefficient; absent means 0
    Int top(int K) const;
};
PullbackExpansion forward_pullback(const ResolutionGraph& g, int stage);

// a(i) >= sum of a(j) over lower-part in-edges j -> i, for every lower i.
bool compatibility_check(const ResolutionGraph& g, const std::map<int, Rat>& a);

enum class OrdMode { sigma, fibre, canonical };

// Order of a divisorial object along the top valuation:
//   sigma     -> sum r_i * nu_i          (multiplicities of a linear system)
//   fibre     -> sum r_i * gamma_i, i <= l_fibre   (the fibre divisor)
//   canonical -> sum r_i * delta_i       (the discrepancy)
Rat ord_linear_functionals(const ResolutionGraph& g, OrdMode mode,
                           const std::vector<Rat>& nu = {});

struct SigmaPartition {
    Int lower, upper, singular, nonsingular;
};
SigmaPartition sigma_partition(const ResolutionGraph& g);

struct RandomGraphParams {
    int K = 10;
    int fibre_dim = 4;
    int max_singular = 3;     // cap for the singular prefix (needs fibre_dim >= 3)
    int edge_density_pct = 30;
    int weight2_pct = 50;
    bool chain = false;       // force the in-edge from i+1 to i everywhere
    int l_fibre = -1;         // -1: drawn at random
};

// Deterministic per seed; the result always passes validate_graph.
ResolutionGraph random_graph(const RandomGraphParams& params, std::uint64_t seed);

// Field-path-aware schema errors for the JSON surfaces.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json graph_to_json(const ResolutionGraph& g);
ResolutionGraph graph_from_json(const nlohmann::json& doc);

}  // namespace rigidity::respath

#endif
