#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "residue/exact.hpp"

using namespace residue;

namespace {

ExactMatrix dense(std::initializer_list<std::initializer_list<long>> rows) {
    DenseMatrix m(rows.size(), rows.begin()->size());
    Index r = 0;
    for (const auto& row : rows) {
        Index c = 0;
        for (long v : row) m(r, c++) = Rational(v);
        ++r;
    }
    return ExactMatrix::from_dense(m);
}

SparseVector vec(std::initializer_list<long> xs) {
    SparseVector v;
    Index i = 0;
    for (long x : xs) {
        if (x) v.emplace_back(i, Rational(x));
        ++i;
    }
    return v;
}

/// Rank by fraction-exact Gaussian elimination on a dense copy.
std::size_t dense_rank(DenseMatrix m) {
    std::size_t r = 0;
    for (Index c = 0; c < static_cast<Index>(m.cols()) && r < static_cast<std::size_t>(m.rows()); ++c) {
        Index piv = r;
        while (piv < static_cast<Index>(m.rows()) && m(piv, c) == 0) ++piv;
        if (piv == static_cast<Index>(m.rows())) continue;
        m.row(piv).swap(m.row(r));
        for (Index i = 0; i < static_cast<Index>(m.rows()); ++i)
            if (i != r && m(i, c) != 0) {
                const Rational f = m(i, c) / m(r, c);
                for (Index j = 0; j < static_cast<Index>(m.cols()); ++j) m(i, j) -= f * m(r, j);
            }
        ++r;
    }
    return r;
}

}  // namespace

TEST_CASE("rank examples") {
    CHECK(rank(ExactMatrix::identity(3)) == 3);
    CHECK(rank(dense({{1, 2}, {2, 4}})) == 1);
    CHECK(rank(ExactMatrix(4, 7)) == 0);
}

TEST_CASE("kernel examples") {
    CHECK(kernel_basis(ExactMatrix::identity(2)).dim() == 0);
    const auto k = kernel_basis(dense({{1, -1}}));
    REQUIRE(k.dim() == 1);
    const auto v = to_dense(k.vectors[0], 2);
    CHECK(v(0) == v(1));
    CHECK(v(0) != 0);
    CHECK(kernel_basis(ExactMatrix(2, 3)).dim() == 3);
}

TEST_CASE("span and quotient examples") {
    const std::vector<SparseVector> three = {vec({1, 0}), vec({0, 1}), vec({1, 1})};
    CHECK(span_dim(three, 2) == 2);
    CHECK(span_dim(std::vector<SparseVector>{}, 2) == 0);
    CHECK(span_dim(std::vector<SparseVector>{vec({2, 4})}, 2) == 1);
    CHECK(quotient_dim(5, std::vector<SparseVector>{}) == 5);
    CHECK(quotient_dim(3, std::vector<SparseVector>{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})}) == 0);
    CHECK(quotient_dim(4, std::vector<SparseVector>{vec({1, 1, 0, 0}), vec({0, 0, 1, 0})}) == 2);
}

TEST_CASE("dense overloads agree") {
    DenseVector a(3), b(3);
    a << 1, 2, 3;
    b << 2, 4, 6;
    CHECK(span_dim(std::vector<DenseVector>{a, b}, 3) == 1);
    CHECK(quotient_dim(3, std::vector<DenseVector>{a}) == 2);
}

TEST_CASE("dimension mismatch is an error") {
    CHECK_THROWS_AS(span_dim(std::vector<SparseVector>{vec({0, 0, 1})}, 2), DimensionMismatch);
    CHECK_THROWS_AS(quotient_dim(2, std::vector<SparseVector>{vec({0, 0, 1})}), DimensionMismatch);
    CHECK_THROWS_AS(dense({{1, 2}}) * dense({{1, 2}}), DimensionMismatch);
}

TEST_CASE("rational text") {
    CHECK(to_string(Rational(3, 6)) == "1/2");
    CHECK(to_string(Rational(-4)) == "-4");
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
}

TEST_CASE("random matrices: rank + nullity, kernel, mod p, blocks") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
        const Index rows = 1 + rng() % 7, cols = 1 + rng() % 7;
        DenseMatrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = rng() % 3 == 0 ? Rational(static_cast<long>(rng() % 9) - 4) : 0;
        // force some dependence
        if (rows > 2) m.row(rows - 1) = m.row(0) * Rational(3, 2) - m.row(1);
        const ExactMatrix e = ExactMatrix::from_dense(m);
        const std::size_t r = rank(e);
        CHECK(r == dense_rank(m));
        CHECK(rank(e.transpose()) == r);
        const auto ker = kernel_basis(e);
        CHECK(r + ker.dim() == cols);
        for (const auto& v : ker.vectors) CHECK(e.apply(v).empty());
        CHECK(rank_mod_p(e) <= r);

        std::vector<SparseVector> rows_v = e.row_vectors();
        const std::size_t split = rows_v.size() / 2;
        // Both halves in disjoint coordinate blocks: total rank is additive.
        std::vector<SparseVector> shifted;
        for (std::size_t i = split; i < rows_v.size(); ++i) {
            SparseVector s = rows_v[i];
            for (auto& [k, c] : s) k += cols;
            shifted.push_back(s);
        }
        std::vector<SparseVector> first(rows_v.begin(), rows_v.begin() + split);
        std::vector<SparseVector> second(rows_v.begin() + split, rows_v.end());
        const auto blocks = std::vector<std::vector<SparseVector>>{first, shifted};
        const std::size_t lazy = blockwise_rank(2, [&](std::size_t b) { return blocks[b]; });
        CHECK(lazy == span_dim(first, cols) + span_dim(second, cols));
        const auto tight = blockwise_ranks(2, [&](std::size_t b) { return blocks[b]; }, [&](std::size_t b) { return blocks[b].size(); });
        CHECK(tight[0] + tight[1] == lazy);
    }
}

TEST_CASE("echelon rows are normalized") {
    Echelon<Rational> ech(3);
    CHECK(ech.insert(vec({2, 4, 0})));
    CHECK_FALSE(ech.insert(vec({1, 2, 0})));
    CHECK(ech.insert(vec({0, 3, 3})));
    for (const auto& row : ech.rows()) CHECK(row.front().second == 1);
    CHECK(ech.reduce(vec({1, 5, 3})).empty());
}
