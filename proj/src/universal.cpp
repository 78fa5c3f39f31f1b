#include "residue/universal.hpp"

#include <random>
#include <stdexcept>

namespace residue {

UniversalHypersurface make_universal(const ProblemSpec& spec) {
    UniversalHypersurface uh{spec, universal_polynomial(spec.n + 1, spec.d), {}, monomial_basis(spec.n + 1, spec.d)};
    BigradedPoly euler(uh.F.n_a(), uh.F.n_x(), 1, spec.d);
    for (int i = 0; i <= spec.n; ++i) {
        uh.partials.push_back(partial_x(uh.F, i));
        for (const auto& [key, c] : uh.partials.back().terms()) {
            Exponent x = key.second;
            ++x[i];
            euler.add_term(key.first, x, c);
        }
    }
    for (const auto& [key, c] : uh.F.terms())
        if (euler.terms().at(key) != c * spec.d) throw std::logic_error("Euler relation failed for F");
    return uh;
}

Exponent torus_weight(const UniversalHypersurface& uh, const FormKey& key) {
    Exponent w = key.x;
    for (SubsetMask rest = key.mask; rest; rest &= rest - 1) ++w[std::countr_zero(rest)];
    for (std::size_t j = 0; j < key.a.size(); ++j)
        if (key.a[j])
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= key.a[j] * uh.a_monomials[j][i];
    return w;
}

bool CharModuleTable::all_agree() const {
    for (const auto& r : rows)
        if (!r.agree) return false;
    return true;
}

bool CharModuleTable::closed_form_matches() const {
    for (const auto& r : rows)
        if (r.closed_form && (*r.closed_form != r.dim_C || *r.closed_form != r.dim_UJR)) return false;
    return true;
}

std::uint64_t rational_normal_curve_piece(int d, int k) {
    return binomial(k + d - 2, d - 2) * static_cast<std::uint64_t>(k * (d + 2) - 1);
}

std::size_t hodge_bookkeeping(int n, int k, int i) {
    // H^{2j}(P^n) is one-dimensional of type (j, j) for 0 <= j <= n; the
    // Lefschetz map H^{2j-2} -> H^{2j} is injective there.
    auto piece = [&](int degree, int level) -> std::size_t {
        if (degree < 0 || degree % 2 != 0 || degree / 2 > n) return 0;
        return degree / 2 >= level ? 1 : 0;
    };
    return piece(n + i, n + 1 - k) - piece(n + i - 2, n - k);
}

UniversalFamily::UniversalFamily(const ProblemSpec& spec) : uh_(make_universal(spec)) {}

WSpace UniversalFamily::w_space(int k, int p) const {
    if (k <= 0) return WSpace{k, p, NumeratorBasis{p, k, FormSpace(uh_.F.n_a(), 0, uh_.F.n_x(), -1, p), {}}};
    return WSpace{k, p, pole_numerators(uh_.F, p, k)};
}

std::uint64_t UniversalFamily::w_dim(int k, int p) const {
    if (k <= 0) return 0;
    return bott_h(spec().n, p, 0, k * spec().d) * monomial_count(uh_.F.n_a(), k);
}

std::map<Exponent, std::vector<Index>> UniversalFamily::weight_blocks(const NumeratorBasis& basis) const {
    std::map<Exponent, std::vector<Index>> grouped;
    for (Index e = 0; e < basis.elements.size(); ++e)
        grouped[torus_weight(uh_, basis.ambient.key(basis.elements[e].front().first))].push_back(e);
    return grouped;
}

ExactMatrix UniversalFamily::rel_differential_matrix(int k, int p) const {
    const WSpace src = w_space(k, p);
    const FormSpace target(uh_.F.n_a(), k + 1, uh_.F.n_x(), (k + 1) * spec().d - p - 1, p + 1);
    std::vector<SparseVector> cols;
    for (const auto& eta : src.basis.elements) cols.push_back(pole_differential(src.basis.ambient, eta, k, uh_.F, target));
    const Index rows = (k <= 0 || p + 1 > spec().n) ? 0 : target.dim();
    return ExactMatrix::from_columns(rows, cols);
}

const std::map<Exponent, std::size_t>& UniversalFamily::rel_differential_block_ranks(int k, int p) {
    if (auto it = d_rank_cache_.find({k, p}); it != d_rank_cache_.end()) return it->second;
    std::map<Exponent, std::size_t> out;
    if (k >= 1 && p >= 0 && p < spec().n) {
        const WSpace src = w_space(k, p);
        const FormSpace target(uh_.F.n_a(), k + 1, uh_.F.n_x(), (k + 1) * spec().d - p - 1, p + 1);
        const auto grouped = weight_blocks(src.basis);
        std::vector<std::pair<const Exponent*, const std::vector<Index>*>> blocks;
        for (const auto& [w, idx] : grouped) blocks.emplace_back(&w, &idx);
        // d o d = 0, so d W_{k-1}^{p-1} of the same weight lies in the kernel.
        const std::map<Exponent, std::size_t> lower =
            (k >= 2 && p >= 1) ? rel_differential_block_ranks(k - 1, p - 1) : std::map<Exponent, std::size_t>{};
        const Exponent zero(spec().n + 1, 0);
        auto bound = [&](std::size_t b) {
            std::size_t known = 0;
            if (auto it = lower.find(*blocks[b].first); it != lower.end()) known = it->second;
            // F^k / F^k is closed.
            if (p == 0 && *blocks[b].first == zero) known = 1;
            return blocks[b].second->size() - known;
        };
        const auto ranks = blockwise_ranks(
            blocks.size(),
            [&](std::size_t b) {
                std::vector<SparseVector> vs;
                vs.reserve(blocks[b].second->size());
                for (Index e : *blocks[b].second)
                    vs.push_back(pole_differential(src.basis.ambient, src.basis.elements[e], k, uh_.F, target));
                return vs;
            },
            bound);
        for (std::size_t b = 0; b < blocks.size(); ++b)
            if (ranks[b]) out[*blocks[b].first] = ranks[b];
    }
    return d_rank_cache_[{k, p}] = std::move(out);
}

std::size_t UniversalFamily::rel_differential_rank(int k, int p) {
    std::size_t total = 0;
    for (const auto& [w, r] : rel_differential_block_ranks(k, p)) total += r;
    return total;
}

namespace {

/// Sparse random combination of a few basis elements, small integer weights.
SparseVector random_element(const NumeratorBasis& basis, std::mt19937_64& rng) {
    SparseVector v;
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        const auto& e = basis.elements[rng() % basis.elements.size()];
        const long c = static_cast<long>(rng() % 7) - 3;
        for (const auto& [i, x] : e) v.emplace_back(i, x * c);
    }
    return canonicalize(std::move(v));
}

}  // namespace

std::size_t UniversalFamily::count_nonzero_d_squared(int k, int p, int trials, std::uint64_t seed) const {
    if (k <= 0 || p + 2 > spec().n) return 0;
    const WSpace src = w_space(k, p);
    if (src.dim() == 0) return 0;
    const int d = spec().d;
    const FormSpace mid(uh_.F.n_a(), k + 1, uh_.F.n_x(), (k + 1) * d - p - 1, p + 1);
    const FormSpace end(uh_.F.n_a(), k + 2, uh_.F.n_x(), (k + 2) * d - p - 2, p + 2);
    std::mt19937_64 rng(seed);
    std::size_t failures = 0;
    for (int t = 0; t < trials; ++t) {
        const auto eta = random_element(src.basis, rng);
        const auto once = pole_differential(src.basis.ambient, eta, k, uh_.F, mid);
        if (!pole_differential(mid, once, k + 1, uh_.F, end).empty()) ++failures;
    }
    return failures;
}

std::size_t UniversalFamily::count_euler_violations(int k, int p, int trials, std::uint64_t seed) const {
    if (k <= 0 || p + 1 > spec().n) return 0;
    const WSpace src = w_space(k, p);
    if (src.dim() == 0) return 0;
    const FormSpace target(uh_.F.n_a(), k + 1, uh_.F.n_x(), (k + 1) * spec().d - p - 1, p + 1);
    std::mt19937_64 rng(seed);
    std::size_t failures = 0;
    for (int t = 0; t < trials; ++t) {
        const auto eta = random_element(src.basis, rng);
        const auto image = pole_differential(src.basis.ambient, eta, k, uh_.F, target);
        if (!euler_contract(target.form(image)).is_zero()) ++failures;
    }
    return failures;
}

std::size_t UniversalFamily::n0_sections_dim(int k) {
    if (k < 1) throw std::invalid_argument("n0_sections_dim requires k >= 1");
    return w_dim(k, spec().n) - rel_differential_rank(k - 1, spec().n - 1);
}

std::size_t UniversalFamily::fkM_sections_dim(int k) {
    if (k < 1) throw std::invalid_argument("fkM_sections_dim requires k >= 1");
    // Subtracts the image of F^{n+1-k} H^n_prim(P^n) = 0; the quotient is
    // formed explicitly so the hook stays exercised.
    const int n = spec().n;
    const WSpace top = w_space(k, n);
    std::vector<SparseVector> primitive;  // H^n_prim(P^n) = 0
    const std::size_t prim_rank = span_dim(primitive, top.basis.ambient.dim());
    return n0_sections_dim(k) - prim_rank;
}

std::size_t UniversalFamily::f1M_rank() const {
    const int n = spec().n;
    return bott_h(n, n, 0, spec().d) - bott_h(n, n, 0, 0);
}

std::size_t UniversalFamily::raise_rank(int k) {
    if (k - 1 <= 0) return 0;
    if (auto it = raise_cache_.find(k); it != raise_cache_.end()) return it->second;
    const int n = spec().n;
    const WSpace lower = w_space(k - 1, n);
    const FormSpace target(uh_.F.n_a(), k, uh_.F.n_x(), k * spec().d - n, n);
    std::vector<std::vector<Index>> blocks;
    for (auto& [w, idx] : weight_blocks(lower.basis)) blocks.push_back(std::move(idx));
    const std::size_t r = blockwise_rank(blocks.size(), [&](std::size_t b) {
        std::vector<SparseVector> vs;
        for (Index e : blocks[b]) vs.push_back(pole_raise(lower.basis.ambient, lower.basis.elements[e], uh_.F, target));
        return vs;
    });
    raise_cache_[k] = r;
    return r;
}

std::size_t UniversalFamily::aux_char_module_piece(int k) {
    if (k < 1) throw std::invalid_argument("aux_char_module_piece requires k >= 1");
    return w_dim(k, spec().n) - raise_rank(k);
}

std::size_t UniversalFamily::char_module_piece(int k) {
    if (k < 1) throw std::invalid_argument("char_module_piece requires k >= 1");
    if (auto it = char_cache_.find(k); it != char_cache_.end()) return it->second;
    const int n = spec().n;
    const int d = spec().d;
    const FormSpace target(uh_.F.n_a(), k, uh_.F.n_x(), k * d - n, n);
    std::size_t result = w_dim(k, n);
    if (k >= 2) {
        // d W_{k-1}^{n-1} + F W_{k-1}^n inside W_k^n, grouped by torus weight.
        const WSpace forms = w_space(k - 1, n - 1);
        const WSpace tops = w_space(k - 1, n);
        std::map<Exponent, std::pair<std::vector<Index>, std::vector<Index>>> grouped;
        for (Index e = 0; e < forms.basis.elements.size(); ++e)
            grouped[torus_weight(uh_, forms.basis.ambient.key(forms.basis.elements[e].front().first))].first.push_back(e);
        for (Index e = 0; e < tops.basis.elements.size(); ++e)
            grouped[torus_weight(uh_, tops.basis.ambient.key(tops.basis.elements[e].front().first))].second.push_back(e);
        std::vector<const std::pair<std::vector<Index>, std::vector<Index>>*> blocks;
        for (const auto& [w, pr] : grouped) blocks.push_back(&pr);
        const std::size_t r = blockwise_rank(blocks.size(), [&](std::size_t b) {
            std::vector<SparseVector> vs;
            for (Index e : blocks[b]->first)
                vs.push_back(pole_differential(forms.basis.ambient, forms.basis.elements[e], k - 1, uh_.F, target));
            for (Index e : blocks[b]->second)
                vs.push_back(pole_raise(tops.basis.ambient, tops.basis.elements[e], uh_.F, target));
            return vs;
        });
        result -= r;
    }
    char_cache_[k] = result;
    return result;
}

std::size_t UniversalFamily::universal_jacobian_piece(int k) const {
    if (k < 1) throw std::invalid_argument("universal_jacobian_piece requires k >= 1");
    const int n = spec().n;
    const int d = spec().d;
    const int x_deg = k * d - n - 1;
    if (x_deg < 0) throw std::invalid_argument("universal_jacobian_piece requires kd - n - 1 >= 0");
    const int n_a = uh_.F.n_a();
    const Index x_count = monomial_count(n + 1, x_deg);
    const Index ambient = monomial_count(n_a, k) * x_count;
    // Generators a^alpha x^beta dF/dx_i of bidegree (k, x_deg).
    const int beta_deg = x_deg - (d - 1);
    if (beta_deg < 0) return ambient;
    const auto alphas = monomial_basis(n_a, k - 1);
    const auto betas = monomial_basis(n + 1, beta_deg);
    auto weight_of = [&](const Exponent& a, const Exponent& x) {
        Exponent w = x;
        for (int j = 0; j < n_a; ++j)
            for (int i = 0; i <= n; ++i) w[i] -= a[j] * uh_.a_monomials[j][i];
        return w;
    };
    struct Gen {
        Index alpha, beta;
        int i;
    };
    std::map<Exponent, std::vector<Gen>> grouped;
    for (Index al = 0; al < alphas.size(); ++al)
        for (Index be = 0; be < betas.size(); ++be)
            for (int i = 0; i <= n; ++i) {
                Exponent x = betas[be];
                // weight of a^alpha x^beta dF/dx_i = weight(a^alpha x^beta) - e_i
                Exponent w = weight_of(alphas[al], x);
                --w[i];
                grouped[w].push_back({al, be, i});
            }
    std::vector<const std::vector<Gen>*> blocks;
    for (const auto& [w, gens] : grouped) blocks.push_back(&gens);
    const std::size_t r = blockwise_rank(blocks.size(), [&](std::size_t b) {
        std::vector<SparseVector> vs;
        for (const Gen& g : *blocks[b]) {
            SparseVector v;
            for (const auto& [key, c] : uh_.partials[g.i].terms()) {
                const Exponent a = alphas[g.alpha] + key.first;
                const Exponent x = betas[g.beta] + key.second;
                v.emplace_back(monomial_rank(a) * x_count + monomial_rank(x), c);
            }
            vs.push_back(canonicalize(std::move(v)));
        }
        return vs;
    });
    return ambient - r;
}

CharModuleTable UniversalFamily::char_module_table(int k_min, int k_max) {
    if (k_min < 1 || k_max < k_min) throw std::invalid_argument("char_module_table: invalid k range");
    CharModuleTable table{spec(), {}, std::nullopt};
    for (int k = k_min; k <= k_max; ++k) {
        CharModuleRow row;
        row.k = k;
        row.dim_C = char_module_piece(k);
        row.dim_UJR = universal_jacobian_piece(k);
        row.agree = row.dim_C == row.dim_UJR;
        if (spec().n == 1) row.closed_form = rational_normal_curve_piece(spec().d, k);
        table.rows.push_back(row);
    }
    for (auto it = table.rows.rbegin(); it != table.rows.rend() && it->agree; ++it) table.onset = it->k;
    return table;
}

bool UniversalFamily::goodness_surjectivity(int k) const {
    if (k < 1) throw std::invalid_argument("goodness_surjectivity requires k >= 1");
    const int n = spec().n;
    const int d = spec().d;
    const int src = k * d - n - 1;
    const int tgt = (k + 1) * d - n - 1;
    const Index target_dim = monomial_count(n + 1, tgt);
    std::vector<SparseVector> products;
    for (const auto& s : monomial_basis(n + 1, d))
        for (const auto& w : monomial_basis(n + 1, src)) products.push_back({{monomial_rank(s + w), Rational(1)}});
    return span_dim(products, target_dim) == target_dim;
}

std::size_t UniversalFamily::intermediate_cohomology(int k, int i) {
    const int n = spec().n;
    if (i < -n || i > -1) throw std::out_of_range("intermediate_cohomology: position must lie in [-n, -1]");
    const int kk = k + i;
    const int p = n + i;
    if (kk < 1) return 0;
    const std::size_t dim = w_dim(kk, p);
    const std::size_t out = rel_differential_rank(kk, p);
    const std::size_t in = (kk - 1 >= 1 && p - 1 >= 0) ? rel_differential_rank(kk - 1, p - 1) : 0;
    return dim - out - in;
}

// ---------------------------------------------------------------------------

WSpace w_space(const ProblemSpec& spec, int k, int p) { return UniversalFamily(spec).w_space(k, p); }
ExactMatrix rel_differential_matrix(const ProblemSpec& spec, int k, int p) {
    return UniversalFamily(spec).rel_differential_matrix(k, p);
}
std::size_t n0_sections_dim(const ProblemSpec& spec, int k) { return UniversalFamily(spec).n0_sections_dim(k); }
std::size_t fkM_sections_dim(const ProblemSpec& spec, int k) { return UniversalFamily(spec).fkM_sections_dim(k); }
std::size_t f1M_rank(const ProblemSpec& spec) { return UniversalFamily(spec).f1M_rank(); }
std::size_t char_module_piece(const ProblemSpec& spec, int k) { return UniversalFamily(spec).char_module_piece(k); }
std::size_t universal_jacobian_piece(const ProblemSpec& spec, int k) {
    return UniversalFamily(spec).universal_jacobian_piece(k);
}
CharModuleTable char_module_table(const ProblemSpec& spec, int k_min, int k_max) {
    return UniversalFamily(spec).char_module_table(k_min, k_max);
}
bool goodness_surjectivity(const ProblemSpec& spec, int k) { return UniversalFamily(spec).goodness_surjectivity(k); }
std::size_t intermediate_cohomology(const ProblemSpec& spec, int k, int i) {
    return UniversalFamily(spec).intermediate_cohomology(k, i);
}

std::size_t fiber_charmodule_dim(const ProblemSpec& spec, const HomogPoly& f, int k) {
    if (k < 1) throw std::invalid_argument("fiber_charmodule_dim requires k >= 1");
    if (f.n_vars() != spec.n + 1 || f.degree() != spec.d) throw DimensionMismatch("polynomial does not match the family");
    return quotient_ring_dim(f, k * spec.d - spec.n - 1);
}

}  // namespace residue
