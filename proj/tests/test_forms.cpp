#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "residue/fixtures.hpp"
#include "residue/forms.hpp"
#include "residue/poly_text.hpp"

using namespace residue;

namespace {

SubsetMask dx(std::initializer_list<int> idx) {
    SubsetMask m = 0;
    for (int i : idx) m |= SubsetMask(1) << i;
    return m;
}

/// c * x^e dx_I on the cone over P^{n_x - 1}, no a-variables.
Form term(int n_x, Exponent e, SubsetMask mask, long c = 1) {
    Form w(0, n_x);
    w.add_term({}, e, mask, Rational(c));
    return w;
}

BigradedPoly lift(const HomogPoly& f) { return BigradedPoly::from_x(f); }

BigradedPoly one(int n_x) {
    BigradedPoly g(0, n_x, 0, 0);
    g.add_term({}, Exponent(n_x, 0), 1);
    return g;
}

}  // namespace

TEST_CASE("twisted form bases") {
    CHECK(twisted_form_basis(2, 1, 2).dim() == 3);
    CHECK(twisted_form_basis(2, 2, 3).dim() == 1);
    CHECK(twisted_form_basis(1, 1, 2).dim() == 1);
    CHECK(twisted_form_basis(2, 1, 1).dim() == 0);
    CHECK(twisted_form_basis(2, 0, 0).dim() == 1);
}

TEST_CASE("basis vectors are Euler-closed twisted forms") {
    for (int n = 1; n <= 3; ++n)
        for (int p = 0; p <= n; ++p)
            for (int m = p; m <= p + 3; ++m) {
                const auto basis = twisted_form_basis(n, p, m);
                const FormSpace space(0, 0, n + 1, m - p, p);
                for (const auto& v : basis.vectors) {
                    const Form w = space.form(v);
                    CHECK(euler_contract(w).is_zero());
                    CHECK_NOTHROW(TwistedForm(w, p, m));
                }
            }
}

TEST_CASE("Bott formula against basis dimensions") {
    CHECK(bott_h(2, 1, 1, 0) == 1);
    CHECK(bott_h(2, 1, 0, 2) == 3);
    CHECK(bott_h(2, 1, 1, 5) == 0);
    CHECK(bott_h(2, 2, 0, 3) == 1);
    CHECK(bott_h(3, 0, 0, 2) == 10);
    for (int n = 1; n <= 3; ++n)
        for (int p = 0; p <= n; ++p)
            for (int m = -1; m <= 8; ++m) CHECK(twisted_form_basis(n, p, m).dim() == bott_h(n, p, 0, m));
}

TEST_CASE("Hodge numbers of projective space from Bott") {
    for (int n = 1; n <= 4; ++n)
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q) CHECK(bott_h(n, p, q, 0) == (p == q ? 1u : 0u));
}

TEST_CASE("ampleness condition") {
    CHECK(check_ampleness_condition(ProblemSpec(2, 3), 5));
    CHECK(check_ampleness_condition(ProblemSpec(3, 2), 5));
    CHECK(check_ampleness_condition(ProblemSpec(1, 2), 10));
}

TEST_CASE("Euler contraction examples") {
    const Form rot = term(2, {1, 0}, dx({1})) - term(2, {0, 1}, dx({0}));
    CHECK(euler_contract(rot).is_zero());
    CHECK(euler_contract(term(2, {0, 0}, dx({0, 1}))) == rot);
    for (int n = 1; n <= 4; ++n) CHECK(euler_contract(volume_form(n)).is_zero());
}

TEST_CASE("wedge examples") {
    const Form d0 = term(2, {0, 0}, dx({0}));
    const Form d1 = term(2, {0, 0}, dx({1}));
    CHECK(wedge(d0, d0).is_zero());
    CHECK(wedge(d0, d1) == wedge(d1, d0) * Rational(-1));
    CHECK(wedge(term(2, {1, 0}, dx({1})), term(2, {0, 1}, dx({0}))) == term(2, {1, 1}, dx({0, 1}), -1));

    const Form w1 = term(3, {1, 0, 0}, dx({1})) - term(3, {0, 1, 0}, dx({0}));
    const Form w2 = term(3, {0, 1, 0}, dx({2})) - term(3, {0, 0, 1}, dx({1}));
    const TwistedForm t = wedge(TwistedForm(w1, 1, 2), TwistedForm(w2, 1, 2));
    CHECK(t.p() == 2);
    CHECK(t.m() == 4);
    CHECK_THROWS_AS(TwistedForm(term(3, {1, 0, 0}, dx({1})), 1, 2), std::invalid_argument);
}

TEST_CASE("exterior_d examples") {
    const HomogPoly f = parse_poly(fixtures::fermat_cubic);
    const RationalFormRep inv{function_form(one(3)), 1, lift(f)};
    const RationalFormRep d_inv = exterior_d(inv);
    CHECK(d_inv.pole_order == 2);
    CHECK(d_inv.numerator == differential(lift(f)) * Rational(-1));

    const RationalFormRep closed{function_form(one(3)), 0, lift(f)};
    const RationalFormRep d_closed = exterior_d(closed);
    CHECK(d_closed.pole_order == 1);
    CHECK(d_closed.numerator.is_zero());
}

TEST_CASE("d twice vanishes and preserves Euler closure") {
    std::mt19937_64 rng(5);
    const HomogPoly f = parse_poly(fixtures::klein_quartic);
    const BigradedPoly F = lift(f);
    for (int p = 0; p <= 1; ++p)
        for (int k = 1; k <= 2; ++k) {
            const NumeratorBasis basis = pole_numerators(F, p, k);
            REQUIRE(basis.dim() == bott_h(2, p, 0, 4 * k));
            for (int t = 0; t < 20; ++t) {
                const auto& eta = basis.elements[rng() % basis.dim()];
                const RationalFormRep rep{basis.ambient.form(eta), k, F};
                const RationalFormRep once = exterior_d(rep);
                CHECK(euler_contract(once.numerator).is_zero());
                CHECK(exterior_d(once).numerator.is_zero());
            }
        }
}

TEST_CASE("fast differential matches the compositional one") {
    const BigradedPoly F = universal_polynomial(3, 2);
    const NumeratorBasis src = pole_numerators(F, 0, 1);
    const FormSpace target(F.n_a(), 2, 3, 2 * 2 - 1, 1);
    for (const auto& eta : src.elements) {
        const RationalFormRep rep{src.ambient.form(eta), 1, F};
        CHECK(target.coordinates(exterior_d(rep).numerator) == pole_differential(src.ambient, eta, 1, F, target));
    }
}

TEST_CASE("form space coordinates round-trip") {
    const FormSpace space(2, 1, 3, 2, 1);
    for (Index i = 0; i < space.dim(); ++i) CHECK(space.index(space.key(i)) == i);
    const Form w = space.form({{0, Rational(2)}, {5, Rational(-1)}});
    CHECK(space.coordinates(w) == SparseVector{{0, Rational(2)}, {5, Rational(-1)}});
}
