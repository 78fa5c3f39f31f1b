#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "residue/fixtures.hpp"
#include "residue/poly_text.hpp"
#include "residue/universal.hpp"

using namespace residue;

TEST_CASE("universal polynomial") {
    const auto uh = make_universal(ProblemSpec(2, 3));
    CHECK(uh.F.n_a() == 10);
    CHECK(uh.partials.size() == 3);
    CHECK(uh.partials[0].a_degree() == 1);
    CHECK(uh.partials[0].x_degree() == 2);
    std::vector<Rational> a(10, 0);
    for (std::size_t j = 0; j < uh.a_monomials.size(); ++j)
        if (uh.a_monomials[j] == Exponent{3, 0, 0} || uh.a_monomials[j] == Exponent{0, 3, 0} ||
            uh.a_monomials[j] == Exponent{0, 0, 3})
            a[j] = 1;
    CHECK(uh.F.specialize(a) == parse_poly(fixtures::fermat_cubic));
}

TEST_CASE("W spaces") {
    CHECK(w_space(ProblemSpec(2, 3), 1, 2).dim() == 10);
    CHECK(w_space(ProblemSpec(2, 4), 1, 1).dim() == 225);  // h^0(Omega^1(4)) = 15
    CHECK(w_space(ProblemSpec(2, 4), 1, 2).dim() == 45);
    CHECK(w_space(ProblemSpec(2, 4), 0, 1).dim() == 0);
    CHECK(w_space(ProblemSpec(1, 3), -1, 0).dim() == 0);
    UniversalFamily fam(ProblemSpec(2, 3));
    for (int k = 0; k <= 2; ++k)
        for (int p = 0; p <= 2; ++p) CHECK(fam.w_space(k, p).dim() == fam.w_dim(k, p));
}

TEST_CASE("relative differential") {
    const ProblemSpec s(1, 2);
    const ExactMatrix m = rel_differential_matrix(s, 1, 0);
    CHECK(m.cols() == 9);
    CHECK(rank(m) == 8);
    UniversalFamily fam(s);
    CHECK(fam.rel_differential_rank(1, 0) == 8);
    CHECK(rel_differential_matrix(s, 1, 1).is_zero());
    CHECK(rel_differential_matrix(s, 0, 0).cols() == 0);
}

TEST_CASE("consecutive differential matrices compose to zero") {
    for (auto [n, d] : {std::pair{2, 2}, {2, 3}}) {
        const ProblemSpec s(n, d);
        UniversalFamily fam(s);
        const ExactMatrix first = rel_differential_matrix(s, 1, 0);
        const WSpace mid = fam.w_space(2, 1);
        const FormSpace end(fam.hypersurface().F.n_a(), 3, n + 1, 3 * d - 2, 2);
        for (const auto& col : first.column_vectors())
            CHECK(pole_differential(mid.basis.ambient, col, 2, fam.hypersurface().F, end).empty());
        CHECK(fam.count_nonzero_d_squared(1, 0, 50, 3) == 0);
        CHECK(fam.count_euler_violations(1, 1, 50, 4) == 0);
    }
}

TEST_CASE("mod-p certified ranks agree with rational ranks") {
    const ProblemSpec s(2, 3);
    UniversalFamily fam(s);
    for (int k = 1; k <= 2; ++k)
        for (int p = 0; p <= 1; ++p) CHECK(fam.rel_differential_rank(k, p) == rank(rel_differential_matrix(s, k, p)));
}

TEST_CASE("global sections") {
    CHECK(n0_sections_dim(ProblemSpec(2, 3), 1) == 10);
    CHECK(n0_sections_dim(ProblemSpec(2, 4), 1) == 45);
    CHECK(n0_sections_dim(ProblemSpec(1, 3), 1) == 8);
    CHECK(fkM_sections_dim(ProblemSpec(2, 4), 1) == 45);
    CHECK(fkM_sections_dim(ProblemSpec(2, 3), 1) == 10);
    CHECK(fkM_sections_dim(ProblemSpec(1, 2), 1) == 3);
    CHECK(f1M_rank(ProblemSpec(2, 4)) == 3);
    CHECK(f1M_rank(ProblemSpec(2, 3)) == 1);
    CHECK(f1M_rank(ProblemSpec(3, 4)) == 1);
    for (int n = 1; n <= 3; ++n)
        for (int d = 2; d <= 4; ++d) {
            const ProblemSpec s(n, d);
            CHECK(fkM_sections_dim(s, 1) == f1M_rank(s) * s.dim_V());
        }
}

TEST_CASE("characteristic module pieces") {
    CHECK(char_module_piece(ProblemSpec(1, 2), 1) == 3);
    CHECK(char_module_piece(ProblemSpec(1, 3), 1) == 8);
    CHECK(char_module_piece(ProblemSpec(1, 3), 2) == 27);
    CHECK(universal_jacobian_piece(ProblemSpec(1, 2), 1) == 3);
    CHECK(universal_jacobian_piece(ProblemSpec(1, 3), 2) == 27);
    CHECK(universal_jacobian_piece(ProblemSpec(1, 2), 2) == 7);
    CHECK_THROWS_AS(universal_jacobian_piece(ProblemSpec(3, 2), 1), std::invalid_argument);
}

TEST_CASE("two-path tables") {
    auto t = char_module_table(ProblemSpec(1, 2), 1, 4);
    std::vector<std::size_t> c, u;
    for (const auto& r : t.rows) {
        c.push_back(r.dim_C);
        u.push_back(r.dim_UJR);
    }
    CHECK(c == std::vector<std::size_t>{3, 7, 11, 15});
    CHECK(u == c);
    CHECK(t.closed_form_matches());
    CHECK(t.onset == 1);

    t = char_module_table(ProblemSpec(1, 3), 1, 3);
    c.clear();
    for (const auto& r : t.rows) c.push_back(r.dim_C);
    CHECK(c == std::vector<std::size_t>{8, 27, 56});
    CHECK(t.all_agree());
    for (int k = 1; k <= 3; ++k) CHECK(rational_normal_curve_piece(3, k) == std::uint64_t((k + 1) * (5 * k - 1)));

    t = char_module_table(ProblemSpec(2, 3), 1, 3);
    CHECK(t.all_agree());
    CHECK_FALSE(t.rows.front().closed_form.has_value());
}

TEST_CASE("closed form for n = 1 at larger d") {
    UniversalFamily fam(ProblemSpec(1, 5));
    for (int k = 1; k <= 3; ++k) {
        CHECK(fam.char_module_piece(k) == rational_normal_curve_piece(5, k));
        CHECK(fam.universal_jacobian_piece(k) == rational_normal_curve_piece(5, k));
    }
}

TEST_CASE("multiplication by F is injective") {
    UniversalFamily fam(ProblemSpec(2, 3));
    for (int k = 2; k <= 3; ++k) {
        CHECK(fam.raise_rank(k) == fam.w_dim(k - 1, 2));
        CHECK(fam.aux_char_module_piece(k) == fam.w_dim(k, 2) - fam.w_dim(k - 1, 2));
    }
}

TEST_CASE("goodness") {
    CHECK(goodness_surjectivity(ProblemSpec(2, 3), 1));
    CHECK(goodness_surjectivity(ProblemSpec(2, 4), 2));
    CHECK_FALSE(goodness_surjectivity(ProblemSpec(3, 2), 1));
}

TEST_CASE("intermediate cohomology") {
    CHECK(intermediate_cohomology(ProblemSpec(2, 3), 2, -1) == 0);
    CHECK(intermediate_cohomology(ProblemSpec(2, 3), 1, -2) == 0);
    // Kernel of W_1^0 -> W_2^1 is spanned by F alone.
    CHECK(intermediate_cohomology(ProblemSpec(2, 4), 3, -2) == 1);
    CHECK(hodge_bookkeeping(2, 3, -2) == 1);
    CHECK_THROWS_AS(intermediate_cohomology(ProblemSpec(2, 3), 2, 0), std::out_of_range);
    CHECK_THROWS_AS(intermediate_cohomology(ProblemSpec(2, 3), 2, -3), std::out_of_range);
    UniversalFamily fam(ProblemSpec(1, 3));
    for (int k = 1; k <= 4; ++k) CHECK(fam.intermediate_cohomology(k, -1) == hodge_bookkeeping(1, k, -1));
}

TEST_CASE("fiber pieces") {
    const ProblemSpec s(2, 4);
    const HomogPoly q = parse_poly(fixtures::fermat_quartic);
    CHECK(fiber_charmodule_dim(s, q, 1) == 3);
    CHECK(fiber_charmodule_dim(s, q, 2) == 3);
    const HomogPoly nodal = parse_poly(fixtures::nodal_cubic);
    CHECK(fiber_charmodule_dim(ProblemSpec(2, 3), nodal, 4) == 1);
    CHECK_THROWS_AS(fiber_charmodule_dim(ProblemSpec(2, 3), q, 1), DimensionMismatch);
}
