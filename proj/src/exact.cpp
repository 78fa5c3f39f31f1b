#include "residue/exact.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>
#include <unordered_map>

namespace residue {

std::string to_string(const Rational& value) {
    Rational q = value;
    q.canonicalize();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    Rational q;
    if (q.set_str(text, 10) != 0) throw std::invalid_argument("malformed rational: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

ModP ModP::from_rational(const Rational& q) {
    auto reduce = [](const Integer& z) {
        Integer r = z % static_cast<unsigned long>(modulus);
        if (r < 0) r += static_cast<unsigned long>(modulus);
        return ModP(static_cast<std::int64_t>(r.get_ui()));
    };
    const ModP den = reduce(q.get_den());
    if (den == ModP(0)) throw std::domain_error("denominator divisible by the modulus");
    return reduce(q.get_num()) / den;
}

ModP ModP::inverse() const {
    if (value == 0) throw std::domain_error("inverse of zero in F_p");
    std::uint64_t result = 1, base = value, e = modulus - 2;
    while (e) {
        if (e & 1) result = result * base % modulus;
        base = base * base % modulus;
        e >>= 1;
    }
    return raw(result);
}

SparseVector canonicalize(SparseVector v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector out;
    out.reserve(v.size());
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i) {
            out.back().second += c;
            if (is_zero(out.back().second)) out.pop_back();
        } else if (!is_zero(c)) {
            out.emplace_back(i, std::move(c));
        }
    }
    return out;
}

SparseVector to_sparse(const DenseVector& v) {
    SparseVector out;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_zero(v(i))) out.emplace_back(static_cast<Index>(i), v(i));
    return out;
}

DenseVector to_dense(const SparseVector& v, Index dim) {
    DenseVector out = DenseVector::Constant(static_cast<Eigen::Index>(dim), Rational(0));
    for (const auto& [i, c] : v) {
        if (i >= dim) throw DimensionMismatch("sparse index exceeds dense dimension");
        out(static_cast<Eigen::Index>(i)) = c;
    }
    return out;
}

// ---------------------------------------------------------------------------
// ExactMatrix

void ExactMatrix::check_bounds(Index r, Index c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
}

void ExactMatrix::set(Index r, Index c, const Rational& value) {
    check_bounds(r, c);
    if (residue::is_zero(value))
        entries_.erase({r, c});
    else
        entries_[{r, c}] = value;
}

void ExactMatrix::add(Index r, Index c, const Rational& value) {
    check_bounds(r, c);
    if (residue::is_zero(value)) return;
    auto [it, inserted] = entries_.try_emplace({r, c}, value);
    if (!inserted) {
        it->second += value;
        if (residue::is_zero(it->second)) entries_.erase(it);
    }
}

Rational ExactMatrix::at(Index r, Index c) const {
    check_bounds(r, c);
    auto it = entries_.find({r, c});
    return it == entries_.end() ? Rational(0) : it->second;
}

ExactMatrix ExactMatrix::from_dense(const DenseMatrix& dense) {
    ExactMatrix m(static_cast<Index>(dense.rows()), static_cast<Index>(dense.cols()));
    for (Eigen::Index r = 0; r < dense.rows(); ++r)
        for (Eigen::Index c = 0; c < dense.cols(); ++c)
            m.set(static_cast<Index>(r), static_cast<Index>(c), dense(r, c));
    return m;
}

ExactMatrix ExactMatrix::from_rows(Index cols, std::span<const SparseVector> rows) {
    ExactMatrix m(rows.size(), cols);
    for (Index r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) m.add(r, c, v);
    return m;
}

ExactMatrix ExactMatrix::from_columns(Index rows, std::span<const SparseVector> columns) {
    ExactMatrix m(rows, columns.size());
    for (Index c = 0; c < columns.size(); ++c)
        for (const auto& [r, v] : columns[c]) m.add(r, c, v);
    return m;
}

ExactMatrix ExactMatrix::identity(Index n) {
    ExactMatrix m(n, n);
    for (Index i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(cols_, rows_);
    for (const auto& [rc, v] : entries_) t.entries_.emplace(std::make_pair(rc.second, rc.first), v);
    return t;
}

DenseMatrix ExactMatrix::to_dense() const {
    DenseMatrix d = DenseMatrix::Constant(static_cast<Eigen::Index>(rows_),
                                          static_cast<Eigen::Index>(cols_), Rational(0));
    for (const auto& [rc, v] : entries_)
        d(static_cast<Eigen::Index>(rc.first), static_cast<Eigen::Index>(rc.second)) = v;
    return d;
}

std::vector<SparseVector> ExactMatrix::row_vectors() const {
    std::vector<SparseVector> rows(rows_);
    for (const auto& [rc, v] : entries_) rows[rc.first].emplace_back(rc.second, v);
    return rows;
}

std::vector<SparseVector> ExactMatrix::column_vectors() const {
    std::vector<SparseVector> cols(cols_);
    for (const auto& [rc, v] : entries_) cols[rc.second].emplace_back(rc.first, v);
    return cols;
}

SparseVector ExactMatrix::apply(const SparseVector& v) const {
    std::vector<Rational> x(cols_);
    for (const auto& [i, c] : v) {
        if (i >= cols_) throw DimensionMismatch("vector length exceeds matrix columns");
        x[i] += c;
    }
    std::map<Index, Rational> acc;
    for (const auto& [rc, a] : entries_) {
        if (residue::is_zero(x[rc.second])) continue;
        acc[rc.first] += a * x[rc.second];
    }
    SparseVector out;
    for (auto& [i, c] : acc)
        if (!residue::is_zero(c)) out.emplace_back(i, c);
    return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    ExactMatrix out(a.rows_, b.cols_);
    const auto brows = b.row_vectors();
    for (const auto& [rc, av] : a.entries_)
        for (const auto& [c, bv] : brows[rc.second]) out.add(rc.first, c, av * bv);
    return out;
}

// ---------------------------------------------------------------------------
// Rank, kernels, spans

namespace {

SparseVectorT<ModP> to_mod_p(const SparseVector& v) {
    SparseVectorT<ModP> out;
    out.reserve(v.size());
    for (const auto& [i, c] : v) {
        ModP m = ModP::from_rational(c);
        if (!is_zero(m)) out.emplace_back(i, m);
    }
    return out;
}

void check_lengths(std::span<const DenseVector> vectors, Index ambient_dim) {
    for (const auto& v : vectors)
        if (static_cast<Index>(v.size()) != ambient_dim)
            throw DimensionMismatch("vector length differs from ambient dimension");
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
    // Eliminate along the shorter side.
    if (m.rows() <= m.cols()) return rank_of_vectors<Rational>(m.cols(), m.row_vectors());
    return rank_of_vectors<Rational>(m.rows(), m.column_vectors());
}

std::size_t rank_mod_p(const ExactMatrix& m) {
    std::vector<SparseVectorT<ModP>> rows;
    for (const auto& r : m.row_vectors()) rows.push_back(to_mod_p(r));
    return rank_of_vectors<ModP>(m.cols(), std::move(rows));
}

SubspaceBasis kernel_basis(const ExactMatrix& m) {
    Echelon<Rational> ech(m.cols());
    for (const auto& r : m.row_vectors()) ech.insert(r);
    ech.make_reduced();
    SubspaceBasis basis;
    basis.ambient_dim = m.cols();
    // For each free column f: v_f = e_f - sum over pivots p of R[p][f] e_p.
    std::vector<std::vector<std::pair<Index, Rational>>> by_free(m.cols());
    for (const auto& row : ech.rows()) {
        const Index lead = row.front().first;
        for (std::size_t t = 1; t < row.size(); ++t)
            by_free[row[t].first].emplace_back(lead, -row[t].second);
    }
    for (Index f = 0; f < m.cols(); ++f) {
        if (ech.is_pivot(f)) continue;
        SparseVector v = std::move(by_free[f]);
        v.emplace_back(f, Rational(1));
        basis.vectors.push_back(canonicalize(std::move(v)));
    }
    return basis;
}

std::size_t span_dim(std::span<const SparseVector> vectors, Index ambient_dim) {
    for (const auto& v : vectors)
        for (const auto& [i, c] : v)
            if (i >= ambient_dim) throw DimensionMismatch("vector index exceeds ambient dimension");
    return rank_of_vectors<Rational>(ambient_dim, {vectors.begin(), vectors.end()});
}

std::size_t span_dim(std::span<const DenseVector> vectors, Index ambient_dim) {
    check_lengths(vectors, ambient_dim);
    std::vector<SparseVector> sparse;
    sparse.reserve(vectors.size());
    for (const auto& v : vectors) sparse.push_back(to_sparse(v));
    return rank_of_vectors<Rational>(ambient_dim, std::move(sparse));
}

std::size_t quotient_dim(Index ambient_dim, std::span<const SparseVector> subspace_vectors) {
    return ambient_dim - span_dim(subspace_vectors, ambient_dim);
}

std::size_t quotient_dim(Index ambient_dim, std::span<const DenseVector> subspace_vectors) {
    return ambient_dim - span_dim(subspace_vectors, ambient_dim);
}

SubspaceBasis independent_subset(Index ambient_dim, std::span<const SparseVector> vectors) {
    Echelon<Rational> ech(ambient_dim);
    SubspaceBasis basis;
    basis.ambient_dim = ambient_dim;
    for (const auto& v : vectors)
        if (ech.insert(v)) basis.vectors.push_back(v);
    return basis;
}

namespace detail {

/// Renumbers the coordinates a block touches to 0..used-1; returns used.
Index compress(std::vector<SparseVector>& block) {
    std::vector<Index> used;
    for (const auto& v : block)
        for (const auto& [i, c] : v) used.push_back(i);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::unordered_map<Index, Index> local;
    local.reserve(used.size());
    for (Index k = 0; k < used.size(); ++k) local.emplace(used[k], k);
    for (auto& v : block)
        for (auto& e : v) e.first = local.at(e.first);
    return used.size();
}

std::size_t local_rank(std::vector<SparseVector>& block) {
    const Index used = compress(block);
    return rank_of_vectors<Rational>(used, std::move(block));
}

std::size_t blockwise_rank(Index ambient_dim, std::vector<std::vector<SparseVector>> blocks) {
    for (const auto& b : blocks)
        for (const auto& v : b)
            for (const auto& [i, c] : v)
                if (i >= ambient_dim) throw DimensionMismatch("vector index exceeds ambient dimension");
    // Largest blocks first so the workers finish together.
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::size_t> ranks(blocks.size(), 0);
    auto work = [&] {
        for (std::size_t b; (b = next.fetch_add(1)) < blocks.size();) ranks[b] = local_rank(blocks[b]);
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 1; w < workers && w < blocks.size(); ++w)
        pool.push_back(std::async(std::launch::async, work));
    work();
    for (auto& f : pool) f.get();
    std::size_t total = 0;
    for (auto r : ranks) total += r;
    return total;
}

}  // namespace detail

std::size_t blockwise_rank(std::size_t n_blocks,
                           const std::function<std::vector<SparseVector>(std::size_t)>& make_block) {
    const auto ranks = blockwise_ranks(n_blocks, make_block, [](std::size_t) { return SIZE_MAX; });
    std::size_t total = 0;
    for (auto r : ranks) total += r;
    return total;
}

std::vector<std::size_t> blockwise_ranks(std::size_t n_blocks,
                                         const std::function<std::vector<SparseVector>(std::size_t)>& make_block,
                                         const std::function<std::size_t(std::size_t)>& upper_bound) {
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> next{0};
    std::vector<std::size_t> ranks(n_blocks, 0);
    auto work = [&] {
        for (std::size_t b; (b = next.fetch_add(1)) < n_blocks;) {
            auto block = make_block(b);
            if (block.empty()) continue;
            const Index ambient = detail::compress(block);
            const std::size_t bound = std::min({upper_bound(b), block.size(), std::size_t(ambient)});
            std::vector<SparseVectorT<ModP>> reduced;
            reduced.reserve(block.size());
            for (const auto& v : block) reduced.push_back(to_mod_p(v));
            const std::size_t lower = rank_of_vectors<ModP>(ambient, std::move(reduced));
            ranks[b] = lower >= bound ? lower : rank_of_vectors<Rational>(ambient, std::move(block));
        }
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 1; w < workers && w < n_blocks; ++w) pool.push_back(std::async(std::launch::async, work));
    work();
    for (auto& f : pool) f.get();
    return ranks;
}

}  // namespace residue
