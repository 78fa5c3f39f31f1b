#pragma once

// Twisted differential forms on P^n, modeled on the affine cone C^{n+1}.
//
// A global section of Omega^p(m) is a p-form sum_I c_I dx_I whose
// coefficients are homogeneous of degree m - p and which is killed by
// contraction with the Euler field E = sum x_i d/dx_i. Coefficients may also
// carry a polynomial dependence on coefficient variables a_J (the universal
// family); d always differentiates in x only.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "residue/jacobian.hpp"
#include "residue/polynomial.hpp"

namespace residue {

/// dx_I is encoded as a bitmask with bit i set for each i in I.
using SubsetMask = std::uint32_t;

struct FormKey {
    Exponent a;
    Exponent x;
    SubsetMask mask = 0;
    auto operator<=>(const FormKey&) const = default;
};

int popcount(SubsetMask mask);

class Form {
public:
    using Terms = std::map<FormKey, Rational>;

    Form(int n_a, int n_x) : n_a_(n_a), n_x_(n_x) {}

    int n_a() const { return n_a_; }
    int n_x() const { return n_x_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& a, const Exponent& x, SubsetMask mask, const Rational& c);
    void add_term(const FormKey& key, const Rational& c) { add_term(key.a, key.x, key.mask, c); }

    Form& operator+=(const Form& other);
    Form& operator-=(const Form& other);
    Form& operator*=(const Rational& c);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, const Rational& c) { return a *= c; }
    friend bool operator==(const Form& a, const Form& b) = default;

private:
    int n_a_;
    int n_x_;
    Terms terms_;
};

/// Euler contraction iota_E. Zero on 0-forms.
Form euler_contract(const Form& w);
/// Exterior derivative in the x-variables.
Form exterior_dx(const Form& w);
Form wedge(const Form& w1, const Form& w2);
/// Multiplies every coefficient by the polynomial g.
Form multiply(const BigradedPoly& g, const Form& w);
/// The 1-form d_x g.
Form differential(const BigradedPoly& g);
/// The 0-form g.
Form function_form(const BigradedPoly& g);

/// Omega = sum_i (-1)^i x_i dx_0 ^ ... ^ (omit i) ^ ... ^ dx_n = iota_E(dx_0 ^ ... ^ dx_n).
Form volume_form(int n);

/// A form with homogeneous x-coefficients of degree m - p and iota_E = 0.
class TwistedForm {
public:
    /// Throws std::invalid_argument unless w qualifies as a section of Omega^p(m).
    TwistedForm(Form w, int p, int m);

    const Form& form() const { return form_; }
    int n() const { return form_.n_x() - 1; }
    int p() const { return p_; }
    int m() const { return m_; }

private:
    Form form_;
    int p_;
    int m_;
};

TwistedForm wedge(const TwistedForm& w1, const TwistedForm& w2);

/// eta / denominator^pole_order. The numerator is never reduced against the
/// denominator.
struct RationalFormRep {
    Form numerator;
    int pole_order = 0;
    BigradedPoly denominator;
};

/// d(eta / f^k) = (f d eta - k df ^ eta) / f^{k+1}, assembled from d, wedge
/// and multiplication.
RationalFormRep exterior_d(const RationalFormRep& rep);

// ---------------------------------------------------------------------------
// Coordinates

std::vector<SubsetMask> subsets_of_size(int n_x, int p);

/// Coordinate space of p-forms with coefficients of bidegree
/// (a_degree, coeff_degree). Coordinates are ordered by (a-monomial,
/// x-monomial, subset), each in graded-lex / lex order.
class FormSpace {
public:
    FormSpace(int n_a, int a_degree, int n_x, int coeff_degree, int p);

    int n_a() const { return n_a_; }
    int n_x() const { return n_x_; }
    int a_degree() const { return a_degree_; }
    int coeff_degree() const { return coeff_degree_; }
    int p() const { return p_; }
    Index dim() const { return a_count_ * x_count_ * masks_.size(); }

    /// Throws DimensionMismatch if the key does not belong to this space.
    Index index(const FormKey& key) const;
    Index index(const Exponent& a, const Exponent& x, SubsetMask mask) const;
    FormKey key(Index i) const;
    SparseVector coordinates(const Form& w) const;
    Form form(const SparseVector& v) const;

private:
    int n_a_, a_degree_, n_x_, coeff_degree_, p_;
    Index a_count_ = 0;
    Index x_count_ = 0;
    std::vector<SubsetMask> masks_;
    std::vector<Index> mask_index_;
};

/// Basis of H^0(P^n, Omega^p(m)) as Euler-contraction kernel vectors in
/// FormSpace(0, 0, n+1, m-p, p) coordinates. Each vector is homogeneous for
/// the torus weight and has coprime integer entries.
SubspaceBasis twisted_form_basis(int n, int p, int m);

/// dim H^q(P^n, Omega^p(m)) by Bott's formula.
std::uint64_t bott_h(int n, int p, int q, int m);

/// Checks H^q(Omega^p(kd)) = 0 for 0 <= p <= n, 1 <= q <= n, 1 <= k <= k_max.
bool check_ampleness_condition(const ProblemSpec& spec, int k_max);

// ---------------------------------------------------------------------------
// Pole-order numerator spaces

/// The space of numerators eta of eta / F^k with eta a section of
/// Omega^p(k * deg_x F) whose coefficients have a-degree k * deg_a F.
/// Basis elements are products (a-monomial) x (twisted form basis vector).
struct NumeratorBasis {
    int p = 0;
    int pole_order = 0;
    FormSpace ambient;
    std::vector<SparseVector> elements;  // in ambient coordinates

    Index dim() const { return elements.size(); }
};

NumeratorBasis pole_numerators(const BigradedPoly& denominator, int p, int pole_order);

/// Coordinates in FormSpace for (p+1, pole_order+1) of the numerator of
/// d(eta / F^k), computed term by term. Agrees with exterior_d.
SparseVector pole_differential(const FormSpace& source, const SparseVector& eta, int pole_order,
                               const BigradedPoly& denominator, const FormSpace& target);

/// Coordinates of F * eta, i.e. eta / F^k rewritten with pole order k+1.
SparseVector pole_raise(const FormSpace& source, const SparseVector& eta, const BigradedPoly& denominator,
                        const FormSpace& target);

}  // namespace residue
