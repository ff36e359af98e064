#include <doctest.h>

#include "oracles.hpp"
#include "rigidity/codim.hpp"
#include "rigidity/polyspace.hpp"

using namespace rigidity;
using namespace rigidity::codim;

TEST_CASE("simplex count equals lattice enumeration") {
    CHECK(simplex_count(2, 3) == 10);
    CHECK(simplex_count(1, 0) == 1);
    CHECK(simplex_count(3, 2) == 10);
    for (int r = 1; r <= 6; ++r)
        for (int a = 0; a <= 12; ++a) CHECK(simplex_count(r, a) == oracles::lattice_enumeration(r, a));
    CHECK_THROWS_AS(simplex_count(0, 3), std::domain_error);
    CHECK_THROWS_AS(simplex_count(2, -1), std::domain_error);
}

TEST_CASE("line locus codimensions") {
    CHECK(codim_line(4, 8) == 27);
    CHECK(codim_line(3, 4) == 9);
    CHECK(codim_fixed_line(3, 4) == 13);
    CHECK(codim_fixed_line(3, 4) == codim_line(3, 4) + 2 * (3 - 1));
    CHECK_THROWS_AS(codim_line(2, 4), std::domain_error);

    // The fixed-line count is exactly the rank of the condition system.
    auto space = polyspace::enumerate_monomials(3, 4);
    auto a = polyspace::make_point({Rat(1), Rat(0), Rat(0), Rat(0)});
    auto b = polyspace::make_point({Rat(0), Rat(1), Rat(0), Rat(0)});
    CHECK(Int(polyspace::exact_rank(polyspace::line_singularity_conditions(space, a, b))) ==
          codim_fixed_line(3, 4));
}

TEST_CASE("plane strata formulas") {
    CHECK(codim_plane_full(6, 5, 2) == 48);
    CHECK(codim_plane_full(3, 5, 2) == 21);
    CHECK(codim_plane_full(6, 5, 4) == 63);
    CHECK_THROWS_AS(codim_plane_full(6, 5, 5), std::domain_error);
    CHECK_THROWS_AS(codim_plane_full(6, 5, 1), std::domain_error);

    CHECK(codim_plane_curve(5, 6, 2) == 51);
    CHECK(codim_plane_curve(5, 6, 3) == 50);
    CHECK_THROWS_AS(codim_plane_curve(5, 6, 4), std::domain_error);

    auto [q6, v6] = plane_curve_min_q(6);
    CHECK(q6 == 3);
    CHECK(v6 == 11);
    auto [q4, v4] = plane_curve_min_q(4);
    CHECK(q4 == 2);
    CHECK(v4 == 7);
    auto [q5, v5] = plane_curve_min_q(5);
    CHECK(q5 == 2);
    CHECK(v5 == 9);
}

TEST_CASE("span strata formulas") {
    CHECK(codim_span_full(8, 5, 3) == 95);
    CHECK(codim_span_full(5, 5, 3) == 56);
    CHECK_THROWS_AS(codim_span_full(4, 5, 3), std::domain_error);
    // Comparison against the sparse-case bound at the same parameters.
    CHECK(codim_span_full(8, 5, 3) >= Int(3) * 8 + Int(4) * 5);

    // head = C(9,3) - C(5,3) - C(5,3) = 64, plus (N+2-2k)((d-1)k+1).
    CHECK(codim_span_double(6, 6, 3, 2) == 96);
    CHECK(codim_span_double(4, 6, 3, 2) == 64);  // N+2-2k = 0 edge
    CHECK(codim_span_double(6, 6, 3, 3) ==
          binomial(9, 3) - binomial(3, 3) - binomial(6, 3) + Int(2) * 16);  // d = 2q edge
    CHECK_THROWS_AS(codim_span_double(6, 6, 3, 4), std::domain_error);
    CHECK_THROWS_AS(codim_span_double(3, 6, 3, 2), std::domain_error);
}

TEST_CASE("master inequality") {
    auto a = master_inequality(6, 5, 4, 2);
    CHECK(a.lhs == 35);
    CHECK(a.rhs == 28);
    CHECK(a.holds);

    auto b = master_inequality(6, 3, 4, 2);
    CHECK(b.lhs == 12);
    CHECK(b.rhs == 16);
    CHECK_FALSE(b.holds);

    auto c = master_inequality(10, 10, 4, 2);
    CHECK(c.lhs == 293);
    CHECK(c.rhs == 110);
    CHECK(c.holds);

    CHECK_THROWS_AS(master_inequality(6, 5, 4, 3), std::domain_error);  // l > k-2
    CHECK_THROWS_AS(master_inequality(6, 5, 7, 2), std::domain_error);  // k > N
    CHECK_THROWS_AS(master_inequality(6, 5, 5, 3), std::domain_error);  // N+1 < k+l
}

TEST_CASE("grassmannian adjustment") {
    CHECK(grassmannian_adjust(Int(27), 4, 1) == 21);
    CHECK(grassmannian_adjust(Int(33), 4, 1) == 27);  // fixed line back to moving line at (4,8)
    CHECK(grassmannian_adjust(Int(42), 9, 9) == 42);
    CHECK(grassmannian_adjust(Int(0), 6, 2) == -12);  // vacuous bounds stay visible
}

TEST_CASE("singular locus and double space bounds") {
    CHECK(singular_locus_bound(4, 8) == 24);
    CHECK(singular_locus_bound(3, 3) == 3);
    CHECK(singular_locus_bound(10, 10) == 80);
    CHECK_THROWS_AS(singular_locus_bound(2, 8), std::domain_error);

    CHECK(double_space_bound(4) == 4);
    CHECK(double_space_bound(5) == 7);
    CHECK(double_space_bound(10) == 37);
    CHECK_THROWS_AS(double_space_bound(3), std::domain_error);

    const Int table[] = {4, 7, 11, 16, 22, 29, 37};
    for (int M = 4; M <= 10; ++M) CHECK(double_space_bound(M) == table[M - 4]);
    for (int M = 4; M <= 64; ++M) {
        CHECK(double_space_bound(M) == Int(M - 2) * (M - 1) / 2 + 1);
        CHECK(singular_locus_bound(M, 2 * M) == Int(2) * M * (M - 1));
        CHECK(singular_locus_bound(M, 2 * M) > double_space_bound(M));
    }
}

namespace {

// The failures of the sparse-case inequality on N,d <= 12, frozen from an
// independent enumeration: (N, d, k, l, lhs, rhs).
const int kSparseFailures[][6] = {
    {5, 4, 4, 2, 9, 15},    {5, 5, 4, 2, 18, 20},   {6, 4, 5, 2, 12, 18},
    {7, 4, 5, 3, 12, 26},   {7, 4, 6, 2, 15, 21},   {7, 5, 5, 3, 30, 33},
    {8, 4, 5, 3, 28, 34},   {8, 4, 6, 3, 16, 30},   {8, 4, 7, 2, 18, 24},
    {9, 4, 6, 3, 35, 39},   {9, 4, 6, 4, 15, 39},   {9, 4, 7, 3, 20, 34},
    {9, 4, 8, 2, 21, 27},   {9, 5, 6, 4, 45, 48},   {10, 4, 6, 4, 34, 48},
    {10, 4, 7, 3, 42, 44},  {10, 4, 7, 4, 20, 44},  {10, 4, 8, 3, 24, 38},
    {10, 4, 9, 2, 24, 30},  {11, 4, 6, 4, 53, 57},  {11, 4, 7, 4, 42, 54},
    {11, 4, 7, 5, 18, 54},  {11, 4, 8, 4, 25, 49},  {11, 4, 9, 3, 28, 42},
    {11, 4, 10, 2, 27, 33}, {11, 5, 7, 5, 63, 65},  {12, 4, 7, 5, 40, 64},
    {12, 4, 8, 4, 50, 60},  {12, 4, 8, 5, 24, 60},  {12, 4, 9, 4, 30, 54},
    {12, 4, 10, 3, 32, 46}, {12, 4, 11, 2, 30, 36},
};

}  // namespace

TEST_CASE("sweep: master family reproduces the exact violation set on N,d <= 12") {
    SweepConfig cfg;
    cfg.families = {"master"};
    auto report = sweep(cfg, 4);
    REQUIRE(report.violations.size() == std::size(kSparseFailures));
    for (std::size_t i = 0; i < report.violations.size(); ++i) {
        const auto& v = report.violations[i];
        CHECK(v.N == kSparseFailures[i][0]);
        CHECK(v.d == kSparseFailures[i][1]);
        CHECK(v.k == kSparseFailures[i][2]);
        CHECK(v.l == kSparseFailures[i][3]);
        CHECK(v.lhs == kSparseFailures[i][4]);
        CHECK(v.rhs == kSparseFailures[i][5]);
    }
}

TEST_CASE("sweep: master family is clean for 6 <= d <= 14") {
    SweepConfig cfg;
    cfg.families = {"master"};
    cfg.d_min = 6;
    cfg.d_max = 14;
    cfg.n_max = 14;
    CHECK(sweep(cfg, 2).violations.empty());
}

TEST_CASE("sweep: fixed-span families clear the positive-dimension bound for d >= 4") {
    SweepConfig cfg;
    cfg.families = {"line", "plane-full", "plane-curve", "span-full", "span-double"};
    cfg.n_max = 14;
    cfg.d_max = 14;
    auto report = sweep(cfg, 4);
    CHECK_FALSE(report.entries.empty());
    CHECK(report.violations.empty());
}

TEST_CASE("sweep: d=3 rows are reported as expected deviations, never as violations") {
    SweepConfig cfg;
    cfg.families = {"master"};
    cfg.include_d3 = true;
    cfg.d_min = 3;
    cfg.d_max = 3;
    auto report = sweep(cfg, 1);
    CHECK(report.violations.empty());
    std::size_t holds = 0;
    for (const auto& e : report.entries)
        if (e.holds) ++holds;
    CHECK(holds == 78);
    CHECK(report.expected_deviations.size() == 47);
    CHECK(holds + report.expected_deviations.size() == report.entries.size());
}

TEST_CASE("sweep: empty ranges produce an empty report") {
    SweepConfig cfg;
    cfg.n_min = 5;
    cfg.n_max = 4;
    cfg.d_min = 5;
    cfg.d_max = 4;
    cfg.m_min = 5;
    cfg.m_max = 4;
    auto report = sweep(cfg, 1);
    CHECK(report.entries.empty());
    CHECK(report.violations.empty());
}

TEST_CASE("sweep: a single-tuple configuration matches the one-shot evaluation") {
    SweepConfig cfg;
    cfg.families = {"master"};
    cfg.n_min = cfg.n_max = 6;
    cfg.d_min = cfg.d_max = 5;
    cfg.k_min = cfg.k_max = 4;
    cfg.l_min = cfg.l_max = 2;
    auto report = sweep(cfg, 1);
    REQUIRE(report.entries.size() == 1);
    auto eval = master_inequality(6, 5, 4, 2);
    CHECK(report.entries[0].lhs == eval.lhs);
    CHECK(report.entries[0].rhs == eval.rhs);
    CHECK(report.entries[0].holds == eval.holds);
}

TEST_CASE("sweep: entries independent of the parallelism degree") {
    SweepConfig cfg;
    cfg.n_max = 8;
    cfg.d_max = 8;
    auto a = sweep(cfg, 1);
    auto b = sweep(cfg, 8);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        CHECK(a.entries[i].family == b.entries[i].family);
        CHECK(a.entries[i].N == b.entries[i].N);
        CHECK(a.entries[i].d == b.entries[i].d);
        CHECK(a.entries[i].k == b.entries[i].k);
        CHECK(a.entries[i].l == b.entries[i].l);
        CHECK(a.entries[i].q == b.entries[i].q);
        CHECK(a.entries[i].lhs == b.entries[i].lhs);
        CHECK(a.entries[i].rhs == b.entries[i].rhs);
    }
    CHECK(a.violations.size() == b.violations.size());
}

TEST_CASE("sweep: min-codim, curve-min-q and double-space rows") {
    SweepConfig cfg;
    cfg.n_min = cfg.n_max = 4;
    cfg.d_min = cfg.d_max = 8;
    auto report = sweep(cfg, 1);
    bool saw_min = false, saw_curve = false;
    int double_space_rows = 0;
    for (const auto& e : report.entries) {
        if (e.family == "min-codim") {
            saw_min = true;
            CHECK(e.rhs == singular_locus_bound(4, 8));
            CHECK(e.holds);
            CHECK_FALSE(e.note.empty());
        }
        if (e.family == "curve-min-q") {
            saw_curve = true;
            CHECK(e.q == 3);  // d = 8: quadratic part minimized away from q = 2
            CHECK(e.note == "minimum at q=3, not q=2");
        }
        if (e.family == "double-space") {
            CHECK(e.rhs == double_space_bound(e.N));
            CHECK(e.lhs == singular_locus_bound(e.N, 2 * e.N));
            CHECK(e.holds);
            ++double_space_rows;
        }
    }
    CHECK(saw_min);
    CHECK(saw_curve);
    CHECK(double_space_rows == 7);  // M = 4..10
}
