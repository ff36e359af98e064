#ifndef RIGIDITY_POLYSPACE_HPP
#define RIGIDITY_POLYSPACE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rigidity/numeric.hpp"

namespace rigidity::polyspace {

// A monomial of the coefficient space: exponent vector over the N+1
// homogeneous variables, summing to the ambient degree.
struct Monomial {
    std::vector<int> exponents;

    int degree() const;
    std::string str() const;  // e.g. "x0^2*x1"
};

// The space of homogeneous forms of degree d in N+1 variables, with its
// monomial basis in graded-lex order (x0 > x1 > ... > xN). Everything else
// in this module is a linear functional on this basis.
struct CoeffSpace {
    int n_vars = 0;  // projective dimension N
    int degree = 0;  // d
    std::vector<Monomial> basis;

    std::size_t dim() const { return basis.size(); }
};

Int space_dim(int N, int d);
CoeffSpace enumerate_monomials(int N, int d);

// Point of P^N with exact rational coordinates, normalized so that the
// first nonzero coordinate is 1.
struct RationalPoint {
    std::vector<Rat> coords;
};

RationalPoint make_point(std::vector<Rat> coords);

// Linear subspace given both implicitly (independent forms) and by an
// explicit rational parametrization (basis of the solution space).
// Restriction functionals differentiate along the parametrization.
struct LinearSubspaceSpec {
    int ambient = 0;                          // N
    std::vector<std::vector<Rat>> forms;      // codim x (N+1)
    std::vector<std::vector<Rat>> basis;      // (N-codim+1) vectors of length N+1

    int codim() const { return static_cast<int>(forms.size()); }
    int dim() const { return ambient - codim(); }  // projective dimension
};

LinearSubspaceSpec make_subspace(int N, std::vector<std::vector<Rat>> forms);
LinearSubspaceSpec whole_space(int N);
bool on_subspace(const LinearSubspaceSpec& theta, const RationalPoint& p);

struct ConditionRow {
    std::vector<Rat> entries;
    std::string provenance;  // which point / derivative / restriction built it
};

struct ConditionMatrix {
    std::size_t cols = 0;
    std::vector<ConditionRow> rows;
};

// Row of values of the basis monomials at p.
std::vector<Rat> evaluation_row(const CoeffSpace& space, const RationalPoint& p);
// Row of values of d(monomial)/dx_var at p.
std::vector<Rat> derivative_row(const CoeffSpace& space, const RationalPoint& p, int var);

// One row per (point, partial derivative) pair; the nullspace is the set of
// forms singular at every listed point.
ConditionMatrix singularity_conditions(const CoeffSpace& space,
                                       const std::vector<RationalPoint>& points);

// Conditions "every point is singular on g restricted to theta", expressed on
// the ambient coefficient space: the value functional plus the derivatives
// along the parametrization directions (dim(theta) + 1 rows per point).
ConditionMatrix restricted_singularity_conditions(const CoeffSpace& space,
                                                  const LinearSubspaceSpec& theta,
                                                  const std::vector<RationalPoint>& points);

// Conditions "the line through a and b lies in Sing(f)": all partials vanish
// identically on the line, coefficient by coefficient of the restricted
// binary forms. (N+1)*d rows of rank d*N+1.
ConditionMatrix line_singularity_conditions(const CoeffSpace& space, const RationalPoint& a,
                                            const RationalPoint& b);

// Exact rank over Q: denominators cleared, then fraction-free (Bareiss)
// elimination on arbitrary-precision integers.
int exact_rank(const ConditionMatrix& matrix);
int exact_rank(const std::vector<std::vector<Rat>>& rows);

// m points on theta with small integer parameter coordinates, certified
// linearly independent (and off the given avoid-forms); resamples up to 32
// times per point before giving up.
std::vector<RationalPoint> random_generic_points(const LinearSubspaceSpec& theta, int m,
                                                 std::uint64_t seed,
                                                 const std::vector<std::vector<Rat>>& avoid_forms = {});

// Sanity of the row constructions: sum of p_j * (derivative row j) equals
// degree * (evaluation row), as exact vectors.
bool euler_identity_check(const CoeffSpace& space, const RationalPoint& p);

// Family of codim-r subspaces through the common centre {l_0 = ... = l_r = 0},
// one member per lattice point of the simplex {e >= 0, |e| <= d-3}:
// member(e) = {l_i = c(i, e_i) * l_0}, with shift constants c(i,0) = 0 and
// c(i,j) = j otherwise (any distinct constants work; integers keep it exact).
struct ThetaMember {
    std::vector<int> shift;  // the lattice point e
    LinearSubspaceSpec theta;
};

std::vector<ThetaMember> theta_family(int d, int N, const std::vector<std::vector<Rat>>& centre_forms);

}  // namespace rigidity::polyspace

#endif
