#include "residue/forms.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

namespace residue {

int popcount(SubsetMask mask) { return std::popcount(mask); }

namespace {

/// Number of elements of the mask strictly below index j.
int count_below(SubsetMask mask, int j) { return std::popcount(mask & ((SubsetMask{1} << j) - 1)); }

int sign_of(int parity) { return (parity & 1) ? -1 : 1; }

/// Sign of dx_I ^ dx_J relative to dx_{I u J}; zero if I and J meet.
int wedge_sign(SubsetMask I, SubsetMask J) {
    if (I & J) return 0;
    int inversions = 0;
    for (SubsetMask rest = J; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        inversions += std::popcount(I >> (j + 1));
    }
    return sign_of(inversions);
}

}  // namespace

void Form::add_term(const Exponent& a, const Exponent& x, SubsetMask mask, const Rational& c) {
    if (static_cast<int>(a.size()) != n_a_ || static_cast<int>(x.size()) != n_x_)
        throw DimensionMismatch("form term exponent length mismatch");
    if (mask >> n_x_) throw DimensionMismatch("form term uses a differential beyond n_x");
    if (residue::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(FormKey{a, x, mask}, c);
    if (!inserted) {
        it->second += c;
        if (residue::is_zero(it->second)) terms_.erase(it);
    }
}

Form& Form::operator+=(const Form& other) {
    if (other.n_a_ != n_a_ || other.n_x_ != n_x_) throw DimensionMismatch("form variable counts differ");
    for (const auto& [k, c] : other.terms_) add_term(k, c);
    return *this;
}

Form& Form::operator-=(const Form& other) {
    if (other.n_a_ != n_a_ || other.n_x_ != n_x_) throw DimensionMismatch("form variable counts differ");
    for (const auto& [k, c] : other.terms_) add_term(k, -c);
    return *this;
}

Form& Form::operator*=(const Rational& c) {
    if (residue::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

Form euler_contract(const Form& w) {
    Form out(w.n_a(), w.n_x());
    for (const auto& [key, c] : w.terms()) {
        for (SubsetMask rest = key.mask; rest; rest &= rest - 1) {
            const int i = std::countr_zero(rest);
            Exponent x = key.x;
            ++x[i];
            out.add_term(key.a, x, key.mask & ~(SubsetMask{1} << i), c * sign_of(count_below(key.mask, i)));
        }
    }
    return out;
}

Form exterior_dx(const Form& w) {
    Form out(w.n_a(), w.n_x());
    for (const auto& [key, c] : w.terms()) {
        for (int j = 0; j < w.n_x(); ++j) {
            if (key.x[j] == 0 || (key.mask >> j & 1)) continue;
            Exponent x = key.x;
            --x[j];
            out.add_term(key.a, x, key.mask | (SubsetMask{1} << j),
                         c * key.x[j] * sign_of(count_below(key.mask, j)));
        }
    }
    return out;
}

Form wedge(const Form& w1, const Form& w2) {
    if (w1.n_a() != w2.n_a() || w1.n_x() != w2.n_x()) throw DimensionMismatch("form variable counts differ");
    Form out(w1.n_a(), w1.n_x());
    for (const auto& [k1, c1] : w1.terms()) {
        for (const auto& [k2, c2] : w2.terms()) {
            const int s = wedge_sign(k1.mask, k2.mask);
            if (s == 0) continue;
            out.add_term(k1.a + k2.a, k1.x + k2.x, k1.mask | k2.mask, c1 * c2 * s);
        }
    }
    return out;
}

Form multiply(const BigradedPoly& g, const Form& w) {
    if (g.n_a() != w.n_a() || g.n_x() != w.n_x()) throw DimensionMismatch("polynomial and form variable counts differ");
    Form out(w.n_a(), w.n_x());
    for (const auto& [gk, gc] : g.terms())
        for (const auto& [k, c] : w.terms()) out.add_term(gk.first + k.a, gk.second + k.x, k.mask, gc * c);
    return out;
}

Form differential(const BigradedPoly& g) {
    Form out(g.n_a(), g.n_x());
    for (int i = 0; i < g.n_x(); ++i) {
        const BigradedPoly gi = partial_x(g, i);
        for (const auto& [k, c] : gi.terms()) out.add_term(k.first, k.second, SubsetMask{1} << i, c);
    }
    return out;
}

Form function_form(const BigradedPoly& g) {
    Form out(g.n_a(), g.n_x());
    for (const auto& [k, c] : g.terms()) out.add_term(k.first, k.second, 0, c);
    return out;
}

Form volume_form(int n) {
    Form top(0, n + 1);
    top.add_term({}, Exponent(n + 1, 0), (SubsetMask{1} << (n + 1)) - 1, 1);
    return euler_contract(top);
}

TwistedForm::TwistedForm(Form w, int p, int m) : form_(std::move(w)), p_(p), m_(m) {
    for (const auto& [key, c] : form_.terms()) {
        if (popcount(key.mask) != p) throw std::invalid_argument("TwistedForm: term of wrong form degree");
        if (total_degree(key.x) != m - p) throw std::invalid_argument("TwistedForm: coefficient degree is not m - p");
    }
    if (!euler_contract(form_).is_zero()) throw std::invalid_argument("TwistedForm: Euler contraction is nonzero");
}

TwistedForm wedge(const TwistedForm& w1, const TwistedForm& w2) {
    return TwistedForm(wedge(w1.form(), w2.form()), w1.p() + w2.p(), w1.m() + w2.m());
}

RationalFormRep exterior_d(const RationalFormRep& rep) {
    const Form& eta = rep.numerator;
    Form num = multiply(rep.denominator, exterior_dx(eta));
    num -= wedge(differential(rep.denominator), eta) * Rational(rep.pole_order);
    return RationalFormRep{std::move(num), rep.pole_order + 1, rep.denominator};
}

// ---------------------------------------------------------------------------

std::vector<SubsetMask> subsets_of_size(int n_x, int p) {
    std::vector<SubsetMask> out;
    if (p < 0 || p > n_x) return out;
    // Lexicographic order of the sorted index tuples.
    std::vector<int> idx(p);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        SubsetMask m = 0;
        for (int i : idx) m |= SubsetMask{1} << i;
        out.push_back(m);
        int t = p - 1;
        while (t >= 0 && idx[t] == n_x - p + t) --t;
        if (t < 0) break;
        ++idx[t];
        for (int u = t + 1; u < p; ++u) idx[u] = idx[u - 1] + 1;
    }
    return out;
}

FormSpace::FormSpace(int n_a, int a_degree, int n_x, int coeff_degree, int p)
    : n_a_(n_a), a_degree_(a_degree), n_x_(n_x), coeff_degree_(coeff_degree), p_(p),
      a_count_(monomial_count(n_a, a_degree)), x_count_(monomial_count(n_x, coeff_degree)),
      masks_(subsets_of_size(n_x, p)), mask_index_(std::size_t{1} << n_x, static_cast<Index>(-1)) {
    if (n_x > 16) throw std::invalid_argument("FormSpace: too many variables");
    for (Index i = 0; i < masks_.size(); ++i) mask_index_[masks_[i]] = i;
}

Index FormSpace::index(const Exponent& a, const Exponent& x, SubsetMask mask) const {
    if (static_cast<int>(a.size()) != n_a_ || static_cast<int>(x.size()) != n_x_ || total_degree(a) != a_degree_ ||
        total_degree(x) != coeff_degree_ || mask >= mask_index_.size() || popcount(mask) != p_)
        throw DimensionMismatch("form term does not belong to this form space");
    return (monomial_rank(a) * x_count_ + monomial_rank(x)) * masks_.size() + mask_index_[mask];
}

Index FormSpace::index(const FormKey& key) const { return index(key.a, key.x, key.mask); }

namespace {

/// Inverse of monomial_rank within a fixed degree.
Exponent unrank_monomial(int n_vars, int degree, Index r) {
    Exponent e(n_vars, 0);
    int remaining = degree;
    for (int v = 0; v + 1 < n_vars; ++v) {
        for (int x = remaining; x >= 0; --x) {
            const Index block = monomial_count(n_vars - v - 1, remaining - x);
            if (r < block) {
                e[v] = x;
                remaining -= x;
                break;
            }
            r -= block;
        }
    }
    if (n_vars > 0) e[n_vars - 1] = remaining;
    return e;
}

}  // namespace

FormKey FormSpace::key(Index i) const {
    if (i >= dim()) throw std::out_of_range("form space index out of range");
    const Index m = i % masks_.size();
    i /= masks_.size();
    const Index xi = i % x_count_;
    const Index ai = i / x_count_;
    return FormKey{unrank_monomial(n_a_, a_degree_, ai), unrank_monomial(n_x_, coeff_degree_, xi), masks_[m]};
}

SparseVector FormSpace::coordinates(const Form& w) const {
    SparseVector v;
    v.reserve(w.terms().size());
    for (const auto& [key, c] : w.terms()) v.emplace_back(index(key), c);
    return canonicalize(std::move(v));
}

Form FormSpace::form(const SparseVector& v) const {
    Form w(n_a_, n_x_);
    for (const auto& [i, c] : v) w.add_term(key(i), c);
    return w;
}

// ---------------------------------------------------------------------------

namespace {

Exponent x_weight(const FormKey& key) {
    Exponent w = key.x;
    for (SubsetMask rest = key.mask; rest; rest &= rest - 1) ++w[std::countr_zero(rest)];
    return w;
}

SparseVector primitive_integer(SparseVector v) {
    Integer den = 1, num = 0;
    for (const auto& [i, c] : v) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num().get_mpz_t());
    }
    if (num == 0) return v;
    const Rational scale(den, num);
    for (auto& [i, c] : v) c *= scale;
    return v;
}

}  // namespace

SubspaceBasis twisted_form_basis(int n, int p, int m) {
    SubspaceBasis out;
    if (p < 0 || p > n + 1) return out;
    const int coeff = m - p;
    const FormSpace space(0, 0, n + 1, coeff, p);
    out.ambient_dim = coeff < 0 ? 0 : space.dim();
    if (coeff < 0) return out;
    if (p == 0) {
        for (Index i = 0; i < space.dim(); ++i) out.vectors.push_back({{i, Rational(1)}});
        return out;
    }
    const FormSpace target(0, 0, n + 1, coeff + 1, p - 1);
    // iota_E preserves the torus weight, so the kernel splits by weight.
    std::map<Exponent, std::vector<Index>> by_weight;
    for (Index i = 0; i < space.dim(); ++i) by_weight[x_weight(space.key(i))].push_back(i);
    for (const auto& [weight, coords] : by_weight) {
        std::vector<SparseVector> columns;
        for (Index i : coords) {
            Form w(0, n + 1);
            w.add_term(space.key(i), 1);
            columns.push_back(target.coordinates(euler_contract(w)));
        }
        // Compress the target rows touched by this block.
        std::map<Index, Index> local;
        for (auto& col : columns)
            for (auto& [r, c] : col) local.emplace(r, 0);
        Index next = 0;
        for (auto& [r, l] : local) l = next++;
        ExactMatrix block(local.size(), columns.size());
        for (Index j = 0; j < columns.size(); ++j)
            for (const auto& [r, c] : columns[j]) block.set(local[r], j, c);
        for (const auto& kv : kernel_basis(block).vectors) {
            SparseVector v;
            for (const auto& [j, c] : kv) v.emplace_back(coords[j], c);
            out.vectors.push_back(primitive_integer(canonicalize(std::move(v))));
        }
    }
    return out;
}

std::uint64_t bott_h(int n, int p, int q, int m) {
    if (p < 0 || p > n || q < 0 || q > n) return 0;
    if (q == 0 && m > p) return binomial(m + n - p, m) * binomial(m - 1, p);
    if (q == p && m == 0) return 1;
    if (q == n && m < p - n) return binomial(-m + p, -m) * binomial(-m - 1, n - p);
    return 0;
}

bool check_ampleness_condition(const ProblemSpec& spec, int k_max) {
    for (int k = 1; k <= k_max; ++k)
        for (int p = 0; p <= spec.n; ++p)
            for (int q = 1; q <= spec.n; ++q)
                if (bott_h(spec.n, p, q, k * spec.d) != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------

NumeratorBasis pole_numerators(const BigradedPoly& denominator, int p, int pole_order) {
    const int n_a = denominator.n_a();
    const int n_x = denominator.n_x();
    const int a_deg = pole_order * denominator.a_degree();
    const int twist = pole_order * denominator.x_degree();
    NumeratorBasis nb{p, pole_order, FormSpace(n_a, a_deg, n_x, twist - p, p), {}};
    if (pole_order <= 0 || twist - p < 0) return nb;
    const SubspaceBasis forms = twisted_form_basis(n_x - 1, p, twist);
    const FormSpace x_space(0, 0, n_x, twist - p, p);
    const auto a_monos = monomial_basis(n_a, a_deg);
    const Index block = x_space.dim();
    nb.elements.reserve(a_monos.size() * forms.dim());
    for (Index ai = 0; ai < a_monos.size(); ++ai) {
        for (const auto& w : forms.vectors) {
            SparseVector v;
            v.reserve(w.size());
            for (const auto& [i, c] : w) v.emplace_back(ai * block + i, c);
            nb.elements.push_back(std::move(v));
        }
    }
    return nb;
}

SparseVector pole_differential(const FormSpace& source, const SparseVector& eta, int pole_order,
                               const BigradedPoly& denominator, const FormSpace& target) {
    // Each term c a^al x^be dx_I contributes, for every term F_J a^ga x^J of F
    // and every j not in I:  c F_J (be_j - k J_j) sgn a^{al+ga} x^{be+J-e_j} dx_j ^ dx_I.
    SparseVector out;
    const int n_x = source.n_x();
    for (const auto& [i, c] : eta) {
        const FormKey key = source.key(i);
        for (const auto& [fk, fc] : denominator.terms()) {
            const Exponent a = key.a + fk.first;
            Exponent x = key.x + fk.second;
            for (int j = 0; j < n_x; ++j) {
                if (key.mask >> j & 1) continue;
                const long factor = static_cast<long>(key.x[j]) - static_cast<long>(pole_order) * fk.second[j];
                if (factor == 0) continue;
                --x[j];
                const int s = sign_of(count_below(key.mask, j));
                out.emplace_back(target.index(a, x, key.mask | (SubsetMask{1} << j)), c * fc * (factor * s));
                ++x[j];
            }
        }
    }
    return canonicalize(std::move(out));
}

SparseVector pole_raise(const FormSpace& source, const SparseVector& eta, const BigradedPoly& denominator,
                        const FormSpace& target) {
    SparseVector out;
    for (const auto& [i, c] : eta) {
        const FormKey key = source.key(i);
        for (const auto& [fk, fc] : denominator.terms())
            out.emplace_back(target.index(key.a + fk.first, key.x + fk.second, key.mask), c * fc);
    }
    return canonicalize(std::move(out));
}

}  // namespace residue
