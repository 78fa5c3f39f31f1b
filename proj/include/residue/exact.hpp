#pragma once

// Sparse exact linear algebra over Q (and, for cross-checks, over F_p).
//
// Every dimension reported by the engine is the rank of some matrix built
// here. Vectors are sparse, sorted by coordinate index; matrices are stored
// as a sorted triplet map. Elimination is templated on the field so the same
// code runs over Rational (the verdict) and ModP (an optional pre-pass).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "residue/rational.hpp"

namespace residue {

using Index = std::size_t;

template <class Scalar>
using SparseVectorT = std::vector<std::pair<Index, Scalar>>;

using SparseVector = SparseVectorT<Rational>;

template <class Scalar>
using DenseMatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using DenseMatrix = DenseMatrixT<Rational>;
using DenseVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sorts by index, merges duplicates and drops zeros.
SparseVector canonicalize(SparseVector v);

SparseVector to_sparse(const DenseVector& v);
DenseVector to_dense(const SparseVector& v, Index dim);

/// Sparse matrix of rationals. Stored entries are always nonzero.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {}

    static ExactMatrix from_dense(const DenseMatrix& dense);
    static ExactMatrix from_rows(Index cols, std::span<const SparseVector> rows);
    static ExactMatrix from_columns(Index rows, std::span<const SparseVector> columns);
    static ExactMatrix identity(Index n);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    std::size_t nonzeros() const { return entries_.size(); }

    /// Sets an entry; a zero value erases it.
    void set(Index r, Index c, const Rational& value);
    void add(Index r, Index c, const Rational& value);
    Rational at(Index r, Index c) const;

    const std::map<std::pair<Index, Index>, Rational>& entries() const { return entries_; }

    ExactMatrix transpose() const;
    DenseMatrix to_dense() const;
    std::vector<SparseVector> row_vectors() const;
    std::vector<SparseVector> column_vectors() const;

    SparseVector apply(const SparseVector& v) const;
    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    bool is_zero() const { return entries_.empty(); }

private:
    void check_bounds(Index r, Index c) const;

    Index rows_ = 0;
    Index cols_ = 0;
    std::map<std::pair<Index, Index>, Rational> entries_;
};

/// Linearly independent vectors in Q^ambient_dim.
struct SubspaceBasis {
    Index ambient_dim = 0;
    std::vector<SparseVector> vectors;

    std::size_t dim() const { return vectors.size(); }
};

/// Incremental row echelon form. Each stored row has leading coefficient 1
/// at a distinct pivot index; insert() reduces a vector against the stored
/// rows and keeps it if something survives.
template <class Scalar>
class Echelon {
public:
    explicit Echelon(Index ambient_dim)
        : ambient_(ambient_dim), pivot_row_(ambient_dim, npos), work_(ambient_dim),
          touched_(ambient_dim, false) {}

    Index ambient_dim() const { return ambient_; }
    std::size_t rank() const { return rows_.size(); }

    /// Returns true if v was independent of the rows already stored.
    bool insert(const SparseVectorT<Scalar>& v) {
        SparseVectorT<Scalar> r = reduce(v);
        if (r.empty()) return false;
        const Scalar lead = r.front().second;
        if (!(lead == Scalar(1))) {
            for (auto& [i, c] : r) c = c / lead;
        }
        pivot_row_[r.front().first] = rows_.size();
        rows_.push_back(std::move(r));
        return true;
    }

    /// Remainder of v after forward reduction; empty iff v lies in the span.
    SparseVectorT<Scalar> reduce(const SparseVectorT<Scalar>& v) {
        std::vector<Index> heap;
        for (const auto& [i, c] : v) {
            if (i >= ambient_) throw DimensionMismatch("vector index exceeds ambient dimension");
            if (is_zero(c)) continue;
            if (!touched_[i]) {
                touched_[i] = true;
                work_[i] = c;
                heap.push_back(i);
            } else {
                work_[i] += c;
            }
        }
        std::make_heap(heap.begin(), heap.end(), std::greater<>());
        SparseVectorT<Scalar> out;
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), std::greater<>());
            const Index i = heap.back();
            heap.pop_back();
            touched_[i] = false;
            Scalar c = std::move(work_[i]);
            work_[i] = Scalar(0);
            if (is_zero(c)) continue;
            const Index pr = pivot_row_[i];
            if (pr == npos) {
                out.emplace_back(i, std::move(c));
                continue;
            }
            const auto& row = rows_[pr];
            for (std::size_t t = 1; t < row.size(); ++t) {
                const Index j = row[t].first;
                if (!touched_[j]) {
                    touched_[j] = true;
                    work_[j] = -(c * row[t].second);
                    heap.push_back(j);
                    std::push_heap(heap.begin(), heap.end(), std::greater<>());
                } else {
                    work_[j] -= c * row[t].second;
                }
            }
        }
        return out;
    }

    const std::vector<SparseVectorT<Scalar>>& rows() const { return rows_; }

    /// Back-substitutes so that every pivot column is zero outside its row.
    void make_reduced() {
        std::vector<Index> order(rows_.size());
        for (Index k = 0; k < rows_.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(), [&](Index a, Index b) {
            return rows_[a].front().first > rows_[b].front().first;
        });
        // Process from the last pivot backwards; rows below are already reduced.
        for (Index k : order) {
            auto row = rows_[k];
            const Index lead = row.front().first;
            SparseVectorT<Scalar> tail(row.begin() + 1, row.end());
            pivot_row_[lead] = npos;
            auto reduced_tail = reduce(tail);
            pivot_row_[lead] = k;
            SparseVectorT<Scalar> fresh;
            fresh.reserve(reduced_tail.size() + 1);
            fresh.push_back(row.front());
            for (auto& e : reduced_tail) fresh.push_back(std::move(e));
            rows_[k] = std::move(fresh);
        }
    }

    bool is_pivot(Index i) const { return pivot_row_[i] != npos; }
    const SparseVectorT<Scalar>& pivot_row(Index i) const { return rows_[pivot_row_[i]]; }

private:
    static constexpr Index npos = static_cast<Index>(-1);

    Index ambient_;
    std::vector<Index> pivot_row_;
    std::vector<SparseVectorT<Scalar>> rows_;
    std::vector<Scalar> work_;
    std::vector<bool> touched_;
};

template <class Scalar>
std::size_t rank_of_vectors(Index ambient_dim, std::vector<SparseVectorT<Scalar>> vectors) {
    // Sparse vectors first keeps fill-in low.
    std::stable_sort(vectors.begin(), vectors.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    Echelon<Scalar> ech(ambient_dim);
    for (const auto& v : vectors) {
        ech.insert(v);
        if (ech.rank() == ambient_dim) break;
    }
    return ech.rank();
}

std::size_t rank(const ExactMatrix& m);
/// Rank of the matrix reduced modulo 2^31-1. A lower bound for rank(m) when
/// m has integer entries; never used as a verdict.
std::size_t rank_mod_p(const ExactMatrix& m);

SubspaceBasis kernel_basis(const ExactMatrix& m);

std::size_t span_dim(std::span<const SparseVector> vectors, Index ambient_dim);
std::size_t span_dim(std::span<const DenseVector> vectors, Index ambient_dim);
std::size_t quotient_dim(Index ambient_dim, std::span<const SparseVector> subspace_vectors);
std::size_t quotient_dim(Index ambient_dim, std::span<const DenseVector> subspace_vectors);

/// Reduces a spanning set to a basis (keeps the independent vectors in order).
SubspaceBasis independent_subset(Index ambient_dim, std::span<const SparseVector> vectors);

/// A vector tagged with a grading key. Vectors of different keys are assumed
/// to live in complementary coordinate blocks, so the span splits into a
/// direct sum and its dimension is the sum of per-block ranks.
template <class Key>
struct GradedVector {
    Key key;
    SparseVector vector;
};

namespace detail {
std::size_t blockwise_rank(Index ambient_dim, std::vector<std::vector<SparseVector>> blocks);
}

/// Sum of ranks of independently generated blocks. make_block(b) returns the
/// spanning vectors of block b; blocks are built and eliminated on worker
/// threads and released as soon as their rank is known.
std::size_t blockwise_rank(std::size_t n_blocks,
                           const std::function<std::vector<SparseVector>(std::size_t)>& make_block);

/// Per-block ranks. Each block is eliminated modulo a prime first, which
/// bounds the rational rank from below; if that reaches upper_bound(b) (a
/// proven upper bound supplied by the caller) the rank is exact, otherwise
/// the block is redone over Q.
std::vector<std::size_t> blockwise_ranks(std::size_t n_blocks,
                                         const std::function<std::vector<SparseVector>(std::size_t)>& make_block,
                                         const std::function<std::size_t(std::size_t)>& upper_bound);

template <class Key>
std::size_t graded_span_dim(Index ambient_dim, std::vector<GradedVector<Key>> vectors) {
    std::map<Key, std::vector<SparseVector>> grouped;
    for (auto& gv : vectors) grouped[gv.key].push_back(std::move(gv.vector));
    std::vector<std::vector<SparseVector>> blocks;
    blocks.reserve(grouped.size());
    for (auto& [key, vs] : grouped) blocks.push_back(std::move(vs));
    return detail::blockwise_rank(ambient_dim, std::move(blocks));
}

}  // namespace residue
