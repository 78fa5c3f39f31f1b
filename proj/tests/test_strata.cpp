#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "residue/fixtures.hpp"
#include "residue/poly_text.hpp"
#include "residue/strata.hpp"

using namespace residue;

namespace {
ProjectivePoint pt(std::initializer_list<long> xs) {
    ProjectivePoint p;
    for (long x : xs) p.emplace_back(x);
    return p;
}
}  // namespace

TEST_CASE("jet matrix shapes and ranks") {
    for (int d = 1; d <= 4; ++d) CHECK(rank(jet_matrix({2, d, 0, {pt({1, 2, 3})}})) == 1);
    const ExactMatrix one = jet_matrix({2, 4, 1, {pt({2, -1, 3})}});
    CHECK(one.rows() == 3);
    CHECK(one.cols() == 15);
    CHECK(rank(one) == 3);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        std::uint64_t state = seed;
        const JetSpec three{2, 4, 1, random_points(2, 3, state)};
        CHECK(rank(jet_matrix(three)) == 9);
    }
}

TEST_CASE("jet matrix entries are derivatives") {
    // f = x0^2 x1 at (1 : 2) in the chart x1 = 1 (largest coordinate).
    const ExactMatrix m = jet_matrix({1, 3, 1, {pt({1, 2})}});
    const Index col = monomial_rank({2, 1});
    CHECK(m.at(0, col) == Rational(1, 4));  // y^2 with y = 1/2
    CHECK(m.at(1, col) == Rational(1));     // 2y
}

TEST_CASE("jet separation") {
    std::uint64_t state = 42;
    CHECK(jet_separation_check({2, 4, 1, random_points(2, 3, state)}));
    CHECK_FALSE(jet_separation_check({2, 2, 1, {pt({1, 0, 0}), pt({0, 1, 0}), pt({1, 1, 0})}}));
    CHECK(jet_separation_check({1, 3, 2, {pt({2, 1})}}));
    CHECK_THROWS_WITH(jet_matrix({2, 3, 1, {pt({1, 2, 3}), pt({-2, -4, -6})}}), "coincident points");
    CHECK_THROWS_AS(jet_matrix({2, 3, -1, {pt({1, 2, 3})}}), std::invalid_argument);
}

TEST_CASE("separation is monotone in points and order") {
    std::uint64_t state = 9;
    const auto pts = random_points(2, 3, state);
    for (int r = 0; r <= 2; ++r) {
        const JetSpec full{2, 5, r, pts};
        if (!jet_separation_check(full)) continue;
        for (int s = 0; s <= r; ++s)
            for (std::size_t drop = 0; drop < pts.size(); ++drop) {
                auto fewer = pts;
                fewer.erase(fewer.begin() + drop);
                CHECK(jet_separation_check({2, 5, s, fewer}));
            }
    }
}

TEST_CASE("stratum codimension estimates") {
    auto r = stratum_codim_estimate(ProblemSpec(2, 4), StrataMode::nodes(2), 5, 1);
    CHECK(r.observed_codim == 2);
    CHECK(r.pass);
    r = stratum_codim_estimate(ProblemSpec(2, 4), StrataMode::nodes(1), 3, 2);
    CHECK(r.observed_codim == 1);
    CHECK(r.pass);
    r = stratum_codim_estimate(ProblemSpec(2, 5), StrataMode::multiplicity(3), 5, 3);
    CHECK(r.conditions == 6);
    CHECK(r.observed_codim == 4);
    CHECK(r.bound == 2);
    CHECK(r.pass);
    CHECK_THROWS_AS(stratum_codim_estimate(ProblemSpec(2, 4), StrataMode::nodes(1), 0, 1), std::invalid_argument);
}

TEST_CASE("estimates never exceed the condition count and replay exactly") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto a = stratum_codim_estimate(ProblemSpec(2, 4), StrataMode::nodes(3), 4, seed);
        const auto b = stratum_codim_estimate(ProblemSpec(2, 4), StrataMode::nodes(3), 4, seed);
        CHECK(a.observed_codim <= static_cast<long>(a.conditions) - 3 * 2);
        CHECK(static_cast<std::uint64_t>(a.observed_codim) <= ProblemSpec(2, 4).dim_P());
        REQUIRE(a.samples.size() == b.samples.size());
        for (std::size_t t = 0; t < a.samples.size(); ++t) {
            CHECK(a.samples[t].points == b.samples[t].points);
            CHECK(a.samples[t].rank == b.samples[t].rank);
            CHECK(rank(jet_matrix({2, 4, 1, a.samples[t].points})) == a.samples[t].rank);
        }
    }
}

TEST_CASE("fiber surjectivity") {
    CHECK(fiber_surjectivity_check(parse_poly(fixtures::nodal_quartic), 1));
    CHECK(fiber_surjectivity_check(parse_poly(fixtures::nodal_cubic), 1));
    CHECK(fiber_surjectivity_check(parse_poly(fixtures::trinodal_quartic), 1));
    CHECK(tjurina_total(parse_poly(fixtures::trinodal_quartic)).tau == 3u);
    // S_0 cannot separate the length-two cusp scheme; S_3 can.
    CHECK_FALSE(fiber_surjectivity_check(parse_poly(fixtures::cuspidal_cubic), 1));
    CHECK(fiber_surjectivity_check(parse_poly(fixtures::cuspidal_cubic), 2));
    CHECK_THROWS_WITH(fiber_surjectivity_check(parse_poly(fixtures::double_line_cubic), 1),
                      "positive-dimensional singular locus");
}
