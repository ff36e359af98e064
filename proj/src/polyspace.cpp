#include "rigidity/polyspace.hpp"

#include <algorithm>
#include <stdexcept>

#include "rigidity/rng.hpp"

namespace rigidity::polyspace {

namespace {

// In-place reduced row echelon form over Q; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<Rat>>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[row]);
        Rat inv = m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] /= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return pivots;
}

// Fraction-free elimination; the matrix is destroyed.
int bareiss_rank(std::vector<std::vector<Int>>& m) {
    if (m.empty()) return 0;
    const std::size_t nrows = m.size();
    const std::size_t ncols = m[0].size();
    std::size_t rank = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
        std::size_t piv = rank;
        while (piv < nrows && m[piv][col] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(m[piv], m[rank]);
        for (std::size_t i = rank + 1; i < nrows; ++i) {
            for (std::size_t j = col + 1; j < ncols; ++j) {
                m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return static_cast<int>(rank);
}

std::vector<Int> clear_denominators(const std::vector<Rat>& row) {
    Int lcm = 1;
    for (const Rat& v : row) {
        Int den = denominator(v);
        lcm = boost::multiprecision::lcm(lcm, den);
    }
    std::vector<Int> out;
    out.reserve(row.size());
    for (const Rat& v : row) out.push_back(numerator(v) * (lcm / denominator(v)));
    Int g = 0;
    for (const Int& v : out) g = boost::multiprecision::gcd(g, v);
    if (g > 1) {
        for (Int& v : out) v /= g;
    }
    return out;
}

// Powers of every coordinate of p up to the given exponent.
std::vector<std::vector<Rat>> power_table(const RationalPoint& p, int max_exp) {
    std::vector<std::vector<Rat>> pow(p.coords.size());
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        pow[i].resize(max_exp + 1);
        pow[i][0] = 1;
        for (int k = 1; k <= max_exp; ++k) pow[i][k] = pow[i][k - 1] * p.coords[i];
    }
    return pow;
}

void check_point_in_ambient(const CoeffSpace& space, const RationalPoint& p) {
    if (p.coords.size() != static_cast<std::size_t>(space.n_vars + 1))
        throw std::invalid_argument("point does not live in the ambient projective space");
    bool all_zero = true;
    for (const Rat& c : p.coords)
        if (c != 0) all_zero = false;
    if (all_zero) throw std::invalid_argument("point is the zero vector");
}

// Unique solution q of basis^T . q = p for a full-column-rank basis matrix;
// throws if p is not in the span.
std::vector<Rat> parameter_coords(const LinearSubspaceSpec& theta, const RationalPoint& p) {
    const std::size_t s = theta.basis.size();
    const std::size_t n = p.coords.size();
    std::vector<std::vector<Rat>> aug(n, std::vector<Rat>(s + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < s; ++j) aug[i][j] = theta.basis[j][i];
        aug[i][s] = p.coords[i];
    }
    std::vector<int> pivots = rref(aug);
    std::vector<Rat> q(s, Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == static_cast<int>(s))
            throw std::invalid_argument("point does not lie on the subspace");
        q[pivots[r]] = aug[r][s];
    }
    return q;
}

}  // namespace

int Monomial::degree() const {
    int sum = 0;
    for (int e : exponents) sum += e;
    return sum;
}

std::string Monomial::str() const {
    std::string out;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(i);
        if (exponents[i] > 1) out += "^" + std::to_string(exponents[i]);
    }
    return out.empty() ? "1" : out;
}

Int space_dim(int N, int d) {
    if (N < 1 || d < 0) throw std::domain_error("space_dim: need N >= 1, d >= 0");
    return binomial(N + d, d);
}

CoeffSpace enumerate_monomials(int N, int d) {
    if (N < 1 || d < 1) throw std::domain_error("enumerate_monomials: need N >= 1, d >= 1");
    CoeffSpace space;
    space.n_vars = N;
    space.degree = d;
    // Graded-lex with x0 > x1 > ... > xN: all monomials share total degree d,
    // so the order is descending lex on exponent vectors.
    std::vector<int> exps(N + 1, 0);
    auto recurse = [&](auto&& self, int var, int remaining) -> void {
        if (var == N) {
            exps[var] = remaining;
            space.basis.push_back(Monomial{exps});
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            exps[var] = e;
            self(self, var + 1, remaining - e);
        }
        exps[var] = 0;
    };
    recurse(recurse, 0, d);
    return space;
}

RationalPoint make_point(std::vector<Rat> coords) {
    std::size_t first = coords.size();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] != 0) {
            first = i;
            break;
        }
    }
    if (first == coords.size()) throw std::invalid_argument("point is the zero vector");
    Rat lead = coords[first];
    for (Rat& c : coords) c /= lead;
    return RationalPoint{std::move(coords)};
}

LinearSubspaceSpec make_subspace(int N, std::vector<std::vector<Rat>> forms) {
    if (N < 1) throw std::invalid_argument("make_subspace: need N >= 1");
    for (const auto& f : forms)
        if (f.size() != static_cast<std::size_t>(N + 1))
            throw std::invalid_argument("make_subspace: form length must be N+1");

    std::vector<std::vector<Rat>> reduced = forms;
    std::vector<int> pivots = rref(reduced);
    if (pivots.size() != forms.size())
        throw std::invalid_argument("make_subspace: forms are linearly dependent");

    // Nullspace basis from the reduced form matrix: one vector per free column.
    std::vector<bool> is_pivot(N + 1, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int free = 0; free <= N; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(N + 1, Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -reduced[r][free];
        basis.push_back(std::move(v));
    }

    LinearSubspaceSpec theta;
    theta.ambient = N;
    theta.forms = std::move(forms);
    theta.basis = std::move(basis);
    return theta;
}

LinearSubspaceSpec whole_space(int N) { return make_subspace(N, {}); }

bool on_subspace(const LinearSubspaceSpec& theta, const RationalPoint& p) {
    for (const auto& form : theta.forms) {
        Rat v = 0;
        for (std::size_t i = 0; i < form.size(); ++i) v += form[i] * p.coords[i];
        if (v != 0) return false;
    }
    return true;
}

std::vector<Rat> evaluation_row(const CoeffSpace& space, const RationalPoint& p) {
    check_point_in_ambient(space, p);
    auto pow = power_table(p, space.degree);
    std::vector<Rat> row;
    row.reserve(space.dim());
    for (const Monomial& mon : space.basis) {
        Rat v = 1;
        for (std::size_t i = 0; i < mon.exponents.size(); ++i) {
            if (mon.exponents[i] > 0) v *= pow[i][mon.exponents[i]];
        }
        row.push_back(v);
    }
    return row;
}

std::vector<Rat> derivative_row(const CoeffSpace& space, const RationalPoint& p, int var) {
    check_point_in_ambient(space, p);
    if (var < 0 || var > space.n_vars) throw std::invalid_argument("derivative_row: bad variable");
    auto pow = power_table(p, space.degree);
    std::vector<Rat> row;
    row.reserve(space.dim());
    for (const Monomial& mon : space.basis) {
        if (mon.exponents[var] == 0) {
            row.push_back(Rat(0));
            continue;
        }
        Rat v = mon.exponents[var];
        for (std::size_t i = 0; i < mon.exponents.size(); ++i) {
            int e = mon.exponents[i] - (static_cast<int>(i) == var ? 1 : 0);
            if (e > 0) v *= pow[i][e];
        }
        row.push_back(v);
    }
    return row;
}

ConditionMatrix singularity_conditions(const CoeffSpace& space,
                                       const std::vector<RationalPoint>& points) {
    ConditionMatrix matrix;
    matrix.cols = space.dim();
    for (std::size_t t = 0; t < points.size(); ++t) {
        check_point_in_ambient(space, points[t]);
        for (int j = 0; j <= space.n_vars; ++j) {
            matrix.rows.push_back(
                {derivative_row(space, points[t], j),
                 "p" + std::to_string(t) + ":d/dx" + std::to_string(j)});
        }
    }
    return matrix;
}

ConditionMatrix restricted_singularity_conditions(const CoeffSpace& space,
                                                  const LinearSubspaceSpec& theta,
                                                  const std::vector<RationalPoint>& points) {
    if (theta.ambient != space.n_vars)
        throw std::invalid_argument("restricted conditions: subspace/space ambient mismatch");
    ConditionMatrix matrix;
    matrix.cols = space.dim();
    for (std::size_t t = 0; t < points.size(); ++t) {
        const RationalPoint& p = points[t];
        check_point_in_ambient(space, p);
        if (!on_subspace(theta, p))
            throw std::invalid_argument("restricted conditions: point " + std::to_string(t) +
                                        " does not satisfy the subspace equations");
        std::vector<Rat> q = parameter_coords(theta, p);
        std::size_t skip = q.size();
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (q[j] != 0) {
                skip = j;
                break;
            }
        }

        matrix.rows.push_back({evaluation_row(space, p), "p" + std::to_string(t) + ":value"});
        // Derivative along each parametrization direction except the one
        // pointing along the point itself (redundant with the value row by
        // the Euler identity).
        std::vector<std::vector<Rat>> ambient_rows(space.n_vars + 1);
        for (int i = 0; i <= space.n_vars; ++i) ambient_rows[i] = derivative_row(space, p, i);
        for (std::size_t j = 0; j < theta.basis.size(); ++j) {
            if (j == skip) continue;
            std::vector<Rat> row(space.dim(), Rat(0));
            for (int i = 0; i <= space.n_vars; ++i) {
                if (theta.basis[j][i] == 0) continue;
                for (std::size_t c = 0; c < row.size(); ++c)
                    row[c] += theta.basis[j][i] * ambient_rows[i][c];
            }
            matrix.rows.push_back(
                {std::move(row), "p" + std::to_string(t) + ":d/du" + std::to_string(j)});
        }
    }
    return matrix;
}

ConditionMatrix line_singularity_conditions(const CoeffSpace& space, const RationalPoint& a,
                                            const RationalPoint& b) {
    check_point_in_ambient(space, a);
    check_point_in_ambient(space, b);
    if (exact_rank(std::vector<std::vector<Rat>>{a.coords, b.coords}) != 2)
        throw std::invalid_argument("line conditions: points do not span a line");

    const int d = space.degree;
    const int N = space.n_vars;
    // Coefficients (in the line parameter) of prod_i (s*a_i + t*b_i)^{e_i}.
    auto binary_form = [&](const std::vector<int>& exps) {
        std::vector<Rat> coeff{Rat(1)};
        for (int i = 0; i <= N; ++i) {
            for (int rep = 0; rep < exps[i]; ++rep) {
                std::vector<Rat> next(coeff.size() + 1, Rat(0));
                for (std::size_t w = 0; w < coeff.size(); ++w) {
                    next[w + 1] += coeff[w] * a.coords[i];
                    next[w] += coeff[w] * b.coords[i];
                }
                coeff = std::move(next);
            }
        }
        return coeff;  // degree = sum(exps), index = power of s
    };

    ConditionMatrix matrix;
    matrix.cols = space.dim();
    matrix.rows.assign(static_cast<std::size_t>(N + 1) * d,
                       ConditionRow{std::vector<Rat>(space.dim(), Rat(0)), ""});
    for (int j = 0; j <= N; ++j)
        for (int w = 0; w < d; ++w)
            matrix.rows[j * d + w].provenance =
                "d/dx" + std::to_string(j) + ":s^" + std::to_string(w);

    for (std::size_t c = 0; c < space.basis.size(); ++c) {
        const Monomial& mon = space.basis[c];
        for (int j = 0; j <= N; ++j) {
            if (mon.exponents[j] == 0) continue;
            std::vector<int> exps = mon.exponents;
            --exps[j];
            std::vector<Rat> coeff = binary_form(exps);
            for (int w = 0; w < d; ++w)
                matrix.rows[j * d + w].entries[c] = Rat(mon.exponents[j]) * coeff[w];
        }
    }
    return matrix;
}

int exact_rank(const std::vector<std::vector<Rat>>& rows) {
    std::vector<std::vector<Int>> cleared;
    cleared.reserve(rows.size());
    for (const auto& row : rows) cleared.push_back(clear_denominators(row));
    return bareiss_rank(cleared);
}

int exact_rank(const ConditionMatrix& matrix) {
    std::vector<std::vector<Rat>> rows;
    rows.reserve(matrix.rows.size());
    for (const auto& r : matrix.rows) {
        if (r.entries.size() != matrix.cols)
            throw std::invalid_argument("exact_rank: ragged condition matrix");
        rows.push_back(r.entries);
    }
    return exact_rank(rows);
}

std::vector<RationalPoint> random_generic_points(const LinearSubspaceSpec& theta, int m,
                                                 std::uint64_t seed,
                                                 const std::vector<std::vector<Rat>>& avoid_forms) {
    const int max_points = static_cast<int>(theta.basis.size());  // dim(theta) + 1
    if (m < 0) throw std::domain_error("random_generic_points: m must be non-negative");
    if (m > max_points)
        throw std::domain_error("random_generic_points: requested " + std::to_string(m) +
                                " independent points on a subspace holding at most " +
                                std::to_string(max_points));

    SplitMix64 rng(seed);
    std::vector<RationalPoint> points;
    std::vector<std::vector<Rat>> coord_rows;
    for (int t = 0; t < m; ++t) {
        bool placed = false;
        for (int attempt = 0; attempt < 32 && !placed; ++attempt) {
            std::vector<Rat> coords(theta.ambient + 1, Rat(0));
            for (const auto& dir : theta.basis) {
                long long c = rng.range(-10, 10);
                if (c == 0) continue;
                for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += Rat(c) * dir[i];
            }
            bool nonzero = false;
            for (const Rat& c : coords)
                if (c != 0) nonzero = true;
            if (!nonzero) continue;

            RationalPoint p = make_point(std::move(coords));
            bool avoided = true;
            for (const auto& form : avoid_forms) {
                Rat v = 0;
                for (std::size_t i = 0; i < form.size(); ++i) v += form[i] * p.coords[i];
                if (v == 0) avoided = false;
            }
            if (!avoided) continue;

            coord_rows.push_back(p.coords);
            if (exact_rank(coord_rows) == t + 1) {
                points.push_back(std::move(p));
                placed = true;
            } else {
                coord_rows.pop_back();
            }
        }
        if (!placed)
            throw std::runtime_error(
                "random_generic_points: retry budget exhausted (subspace too small for " +
                std::to_string(m) + " independent points)");
    }
    return points;
}

bool euler_identity_check(const CoeffSpace& space, const RationalPoint& p) {
    std::vector<Rat> weighted(space.dim(), Rat(0));
    for (int j = 0; j <= space.n_vars; ++j) {
        if (p.coords[j] == 0) continue;
        std::vector<Rat> row = derivative_row(space, p, j);
        for (std::size_t c = 0; c < row.size(); ++c) weighted[c] += p.coords[j] * row[c];
    }
    std::vector<Rat> value = evaluation_row(space, p);
    for (std::size_t c = 0; c < value.size(); ++c) {
        if (weighted[c] != Rat(space.degree) * value[c]) return false;
    }
    return true;
}

std::vector<ThetaMember> theta_family(int d, int N,
                                      const std::vector<std::vector<Rat>>& centre_forms) {
    if (d < 3) throw std::domain_error("theta_family: need d >= 3");
    if (centre_forms.size() < 2)
        throw std::invalid_argument("theta_family: need at least two centre forms (l_0, l_1)");
    const int r = static_cast<int>(centre_forms.size()) - 1;
    // Checks independence of l_0..l_r up front.
    make_subspace(N, centre_forms);

    const int budget = d - 3;
    std::vector<ThetaMember> family;
    std::vector<int> shift(r, 0);
    auto emit = [&]() {
        std::vector<std::vector<Rat>> forms;
        for (int i = 1; i <= r; ++i) {
            std::vector<Rat> f(N + 1);
            Rat c = shift[i - 1];  // shift constants: 0, 1, 2, ...
            for (int v = 0; v <= N; ++v) f[v] = centre_forms[i][v] - c * centre_forms[0][v];
            forms.push_back(std::move(f));
        }
        family.push_back({shift, make_subspace(N, std::move(forms))});
    };
    auto recurse = [&](auto&& self, int i, int remaining) -> void {
        if (i == r - 1) {
            for (int e = 0; e <= remaining; ++e) {
                shift[i] = e;
                emit();
            }
            shift[i] = 0;
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            shift[i] = e;
            self(self, i + 1, remaining - e);
        }
        shift[i] = 0;
    };
    recurse(recurse, 0, budget);
    return family;
}

}  // namespace rigidity::polyspace
