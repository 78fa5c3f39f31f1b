#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "residue/fixtures.hpp"
#include "residue/griffiths.hpp"
#include "residue/poly_text.hpp"

using namespace residue;

namespace {

HomogPoly random_smooth(int n, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (;;) {
        HomogPoly f(n + 1, d);
        for (const auto& e : monomial_basis(n + 1, d)) f.add_term(e, Rational(static_cast<long>(rng() % 7) - 3));
        if (!f.is_zero() && is_smooth(f)) return f;
    }
}

}  // namespace

TEST_CASE("pole complex examples") {
    const HomogPoly quartic = parse_poly(fixtures::fermat_quartic);
    CHECK(pole_complex_cohomology(quartic, 2) == std::vector<std::size_t>{3});
    const HomogPoly cubic = parse_poly(fixtures::fermat_cubic);
    CHECK(pole_complex_cohomology(cubic, 1).back() == 2);
    for (int d = 3; d <= 5; ++d) {
        const HomogPoly f = random_smooth(2, d, 100 + d);
        CHECK(pole_complex_cohomology(f, 2).back() == binomial(d - 1, 2));
    }
}

TEST_CASE("pole complex differentials compose to zero") {
    CHECK(build_pole_complex(parse_poly(fixtures::klein_quartic), 0).composites_vanish());
    CHECK(build_pole_complex(parse_poly(fixtures::fermat_cubic), 0).composites_vanish());
}

TEST_CASE("vanishing Hodge numbers") {
    auto r = vanishing_hodge_numbers(parse_poly(fixtures::fermat_quartic));
    CHECK(r.graded_dims == std::vector<std::size_t>{3, 3});
    CHECK(r.total == 6);
    r = vanishing_hodge_numbers(parse_poly(fixtures::fermat_cubic));
    CHECK(r.graded_dims == std::vector<std::size_t>{1, 1});
    CHECK(r.total == 2);
    r = vanishing_hodge_numbers(parse_poly(fixtures::k3_quartic));
    CHECK(r.graded_dims == std::vector<std::size_t>{1, 19, 1});
    CHECK(r.total == 21);
    CHECK(r.paths_agree());
}

TEST_CASE("filtration dims accumulate the graded pieces") {
    const auto r = vanishing_hodge_numbers(parse_poly(fixtures::klein_quartic));
    std::size_t running = 0;
    for (std::size_t k = 0; k < r.graded_dims.size(); ++k) {
        running += r.graded_dims[k];
        CHECK(r.filtration_dims[k] == running);
    }
}

TEST_CASE("Jacobian ring check") {
    CHECK(jacobian_ring_check(parse_poly(fixtures::fermat_quartic)));
    CHECK(jacobian_ring_check(parse_poly(fixtures::fermat_cubic)));
    const HomogPoly quintic = random_smooth(2, 5, 2024);
    const auto r = vanishing_hodge_numbers(quintic);
    CHECK(r.paths_agree());
    CHECK(r.total == 12);
}

TEST_CASE("plane curves of every small degree give genus") {
    for (int d = 3; d <= 6; ++d) {
        const auto r = vanishing_hodge_numbers(random_smooth(2, d, 7 * d));
        const std::size_t g = (d - 1) * (d - 2) / 2;
        CHECK(r.graded_dims == std::vector<std::size_t>{g, g});
    }
}

TEST_CASE("Hodge symmetry and projective invariance") {
    const HomogPoly dwork = parse_poly("x0^4 + x1^4 + x2^4 + x3^4 + x0*x1*x2*x3");
    REQUIRE(is_smooth(dwork));
    const auto k3 = vanishing_hodge_numbers(dwork);
    CHECK(k3.graded_dims == std::vector<std::size_t>{1, 19, 1});

    const HomogPoly f = random_smooth(2, 4, 9);
    const auto r = vanishing_hodge_numbers(f);
    CHECK(r.graded_dims.front() == r.graded_dims.back());
    DenseMatrix g(3, 3);
    g << 1, 1, 0, 0, 1, 2, 1, 0, 1;
    CHECK(vanishing_hodge_numbers(f.linear_substitution(g)).graded_dims == r.graded_dims);
}

TEST_CASE("singular divisors are rejected") {
    CHECK_THROWS_WITH(vanishing_hodge_numbers(parse_poly(fixtures::nodal_cubic)),
                      "pole-order formula requires smooth divisor");
    CHECK_THROWS_AS(pole_complex_cohomology(parse_poly(fixtures::cuspidal_cubic), 1), SingularDivisor);
}
