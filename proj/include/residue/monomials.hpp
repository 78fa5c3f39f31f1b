#pragma once

#include <cstdint>
#include <vector>

#include "residue/exact.hpp"

namespace residue {

using Exponent = std::vector<int>;

/// Binomial coefficient C(n, k); zero when k < 0, k > n or n < 0.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

/// Number of monomials of the given degree in n_vars variables.
std::uint64_t monomial_count(int n_vars, int degree);

/// All exponent vectors of the given degree, graded lexicographic order
/// (x0^degree first). Empty for negative degree.
std::vector<Exponent> monomial_basis(int n_vars, int degree);

/// Position of an exponent inside monomial_basis(exp.size(), |exp|).
Index monomial_rank(const Exponent& exp);

int total_degree(const Exponent& exp);
Exponent operator+(const Exponent& a, const Exponent& b);

/// Indexes the monomials of one degree; rank/unrank in O(n_vars).
class MonomialSpace {
public:
    MonomialSpace(int n_vars, int degree);

    int n_vars() const { return n_vars_; }
    int degree() const { return degree_; }
    Index dim() const { return basis_.size(); }
    const Exponent& operator[](Index i) const { return basis_[i]; }
    const std::vector<Exponent>& basis() const { return basis_; }
    Index index(const Exponent& exp) const;

private:
    int n_vars_;
    int degree_;
    std::vector<Exponent> basis_;
};

}  // namespace residue
