#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "residue/monomials.hpp"

namespace residue {

class InhomogeneousPolynomial : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Homogeneous polynomial in x_0..x_{n_vars-1} with rational coefficients.
/// The zero polynomial keeps its nominal degree.
class HomogPoly {
public:
    using Terms = std::map<Exponent, Rational>;

    HomogPoly(int n_vars, int degree) : n_vars_(n_vars), degree_(degree) {}
    /// Throws InhomogeneousPolynomial if the terms have mixed degrees.
    static HomogPoly from_terms(int n_vars, const std::vector<std::pair<Exponent, Rational>>& terms);
    static HomogPoly monomial(const Exponent& exp, const Rational& coeff = 1);
    static HomogPoly variable(int n_vars, int i);

    int n_vars() const { return n_vars_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const Exponent& exp) const;

    void add_term(const Exponent& exp, const Rational& coeff);

    HomogPoly& operator+=(const HomogPoly& other);
    HomogPoly& operator-=(const HomogPoly& other);
    HomogPoly& operator*=(const Rational& c);
    friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
    friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
    friend HomogPoly operator*(HomogPoly a, const Rational& c) { return a *= c; }
    friend HomogPoly operator*(const HomogPoly& a, const HomogPoly& b) { return multiply(a, b); }
    friend bool operator==(const HomogPoly& a, const HomogPoly& b) = default;

    friend HomogPoly multiply(const HomogPoly& p, const HomogPoly& q);
    friend HomogPoly partial(const HomogPoly& p, int i);

    Rational evaluate(const std::vector<Rational>& point) const;
    /// Coordinates in the graded-lex monomial basis of its degree.
    SparseVector coordinates() const;
    /// Substitutes x_i -> sum_j m(i, j) x_j.
    HomogPoly linear_substitution(const DenseMatrix& m) const;

private:
    int n_vars_;
    int degree_;
    Terms terms_;
};

HomogPoly multiply(const HomogPoly& p, const HomogPoly& q);
HomogPoly partial(const HomogPoly& p, int i);
HomogPoly power(const HomogPoly& p, int e);

/// Polynomial in coefficient variables a_0..a_{n_a-1} and x_0..x_{n_x-1},
/// homogeneous in each group separately.
class BigradedPoly {
public:
    using Key = std::pair<Exponent, Exponent>;  // (a-exponent, x-exponent)
    using Terms = std::map<Key, Rational>;

    BigradedPoly(int n_a, int n_x, int a_degree, int x_degree)
        : n_a_(n_a), n_x_(n_x), a_degree_(a_degree), x_degree_(x_degree) {}
    /// A polynomial in x alone, viewed with a-degree zero.
    static BigradedPoly from_x(const HomogPoly& f, int n_a = 0);

    int n_a() const { return n_a_; }
    int n_x() const { return n_x_; }
    int a_degree() const { return a_degree_; }
    int x_degree() const { return x_degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& a, const Exponent& x, const Rational& coeff);
    friend BigradedPoly partial_x(const BigradedPoly& p, int i);
    friend bool operator==(const BigradedPoly& a, const BigradedPoly& b) = default;

    /// Substitutes numeric values for every a-variable.
    HomogPoly specialize(const std::vector<Rational>& a_values) const;

private:
    int n_a_;
    int n_x_;
    int a_degree_;
    int x_degree_;
    Terms terms_;
};

BigradedPoly partial_x(const BigradedPoly& p, int i);

/// Sum over all degree-d monomials x^J of a_J x^J, with a_J indexed by the
/// graded-lex position of J.
BigradedPoly universal_polynomial(int n_x, int d);

}  // namespace residue
