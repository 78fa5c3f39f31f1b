#include "residue/polynomial.hpp"

#include <sstream>

namespace residue {

HomogPoly HomogPoly::from_terms(int n_vars, const std::vector<std::pair<Exponent, Rational>>& terms) {
    int degree = -1;
    std::vector<int> degrees;
    for (const auto& [e, c] : terms) {
        if (static_cast<int>(e.size()) != n_vars) throw DimensionMismatch("exponent length mismatch");
        degrees.push_back(total_degree(e));
    }
    for (int dg : degrees) {
        if (degree < 0) degree = dg;
        if (dg != degree) {
            std::ostringstream msg;
            msg << "inhomogeneous polynomial: term degrees";
            for (int x : degrees) msg << ' ' << x;
            throw InhomogeneousPolynomial(msg.str());
        }
    }
    HomogPoly p(n_vars, std::max(degree, 0));
    for (const auto& [e, c] : terms) p.add_term(e, c);
    return p;
}

HomogPoly HomogPoly::monomial(const Exponent& exp, const Rational& coeff) {
    HomogPoly p(static_cast<int>(exp.size()), total_degree(exp));
    p.add_term(exp, coeff);
    return p;
}

HomogPoly HomogPoly::variable(int n_vars, int i) {
    Exponent e(n_vars, 0);
    e.at(i) = 1;
    return monomial(e);
}

Rational HomogPoly::coefficient(const Exponent& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rational(0) : it->second;
}

void HomogPoly::add_term(const Exponent& exp, const Rational& coeff) {
    if (static_cast<int>(exp.size()) != n_vars_) throw DimensionMismatch("exponent length mismatch");
    if (total_degree(exp) != degree_) throw InhomogeneousPolynomial("term degree differs from polynomial degree");
    if (residue::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(exp, coeff);
    if (!inserted) {
        it->second += coeff;
        if (residue::is_zero(it->second)) terms_.erase(it);
    }
}

HomogPoly& HomogPoly::operator+=(const HomogPoly& other) {
    if (other.n_vars_ != n_vars_) throw DimensionMismatch("variable count mismatch");
    if (other.is_zero()) return *this;
    if (is_zero()) degree_ = other.degree_;
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

HomogPoly& HomogPoly::operator-=(const HomogPoly& other) {
    if (other.n_vars_ != n_vars_) throw DimensionMismatch("variable count mismatch");
    if (other.is_zero()) return *this;
    if (is_zero()) degree_ = other.degree_;
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

HomogPoly& HomogPoly::operator*=(const Rational& c) {
    if (residue::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

HomogPoly multiply(const HomogPoly& p, const HomogPoly& q) {
    if (p.n_vars_ != q.n_vars_) throw DimensionMismatch("variable count mismatch");
    HomogPoly r(p.n_vars_, p.degree_ + q.degree_);
    for (const auto& [e1, c1] : p.terms_)
        for (const auto& [e2, c2] : q.terms_) r.add_term(e1 + e2, c1 * c2);
    return r;
}

HomogPoly partial(const HomogPoly& p, int i) {
    if (i < 0 || i >= p.n_vars_) throw std::out_of_range("partial: variable index out of range");
    HomogPoly r(p.n_vars_, std::max(p.degree_ - 1, 0));
    for (const auto& [e, c] : p.terms_) {
        if (e[i] == 0) continue;
        Exponent e2 = e;
        --e2[i];
        r.add_term(e2, c * e[i]);
    }
    return r;
}

HomogPoly power(const HomogPoly& p, int e) {
    HomogPoly r = HomogPoly::monomial(Exponent(p.n_vars(), 0));
    for (int i = 0; i < e; ++i) r = multiply(r, p);
    return r;
}

Rational HomogPoly::evaluate(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != n_vars_) throw DimensionMismatch("point dimension mismatch");
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < n_vars_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        total += t;
    }
    return total;
}

SparseVector HomogPoly::coordinates() const {
    SparseVector v;
    v.reserve(terms_.size());
    for (const auto& [e, c] : terms_) v.emplace_back(monomial_rank(e), c);
    return canonicalize(std::move(v));
}

HomogPoly HomogPoly::linear_substitution(const DenseMatrix& m) const {
    if (m.rows() != n_vars_ || m.cols() != n_vars_) throw DimensionMismatch("substitution matrix shape");
    std::vector<HomogPoly> images;
    for (int i = 0; i < n_vars_; ++i) {
        HomogPoly li(n_vars_, 1);
        for (int j = 0; j < n_vars_; ++j) {
            Exponent e(n_vars_, 0);
            e[j] = 1;
            li.add_term(e, m(i, j));
        }
        images.push_back(std::move(li));
    }
    HomogPoly r(n_vars_, degree_);
    for (const auto& [e, c] : terms_) {
        HomogPoly t = HomogPoly::monomial(Exponent(n_vars_, 0), c);
        for (int i = 0; i < n_vars_; ++i) t = multiply(t, power(images[i], e[i]));
        r += t;
    }
    return r;
}

// ---------------------------------------------------------------------------

BigradedPoly BigradedPoly::from_x(const HomogPoly& f, int n_a) {
    BigradedPoly p(n_a, f.n_vars(), 0, f.degree());
    for (const auto& [e, c] : f.terms()) p.add_term(Exponent(n_a, 0), e, c);
    return p;
}

void BigradedPoly::add_term(const Exponent& a, const Exponent& x, const Rational& coeff) {
    if (static_cast<int>(a.size()) != n_a_ || static_cast<int>(x.size()) != n_x_)
        throw DimensionMismatch("exponent length mismatch");
    if (total_degree(a) != a_degree_ || total_degree(x) != x_degree_)
        throw InhomogeneousPolynomial("term bidegree differs from polynomial bidegree");
    if (residue::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace({a, x}, coeff);
    if (!inserted) {
        it->second += coeff;
        if (residue::is_zero(it->second)) terms_.erase(it);
    }
}

BigradedPoly partial_x(const BigradedPoly& p, int i) {
    if (i < 0 || i >= p.n_x_) throw std::out_of_range("partial_x: variable index out of range");
    BigradedPoly r(p.n_a_, p.n_x_, p.a_degree_, std::max(p.x_degree_ - 1, 0));
    for (const auto& [key, c] : p.terms_) {
        const auto& [a, x] = key;
        if (x[i] == 0) continue;
        Exponent x2 = x;
        --x2[i];
        r.add_term(a, x2, c * x[i]);
    }
    return r;
}

HomogPoly BigradedPoly::specialize(const std::vector<Rational>& a_values) const {
    if (static_cast<int>(a_values.size()) != n_a_) throw DimensionMismatch("a-value count mismatch");
    HomogPoly r(n_x_, x_degree_);
    for (const auto& [key, c] : terms_) {
        Rational t = c;
        for (int j = 0; j < n_a_; ++j)
            for (int k = 0; k < key.first[j]; ++k) t *= a_values[j];
        r.add_term(key.second, t);
    }
    return r;
}

BigradedPoly universal_polynomial(int n_x, int d) {
    const auto monos = monomial_basis(n_x, d);
    const int n_a = static_cast<int>(monos.size());
    BigradedPoly F(n_a, n_x, 1, d);
    for (int j = 0; j < n_a; ++j) {
        Exponent a(n_a, 0);
        a[j] = 1;
        F.add_term(a, monos[j], 1);
    }
    return F;
}

}  // namespace residue
