#pragma once

// Graded global-section model of the filtered D-modules attached to the
// universal degree-d hypersurface in P^n.
//
// Everything over the parameter space P is computed one a-degree at a time:
// W_k^p = H^0(Omega^p(kd)) (x) Q[a]_k is the space of numerators eta of
// relative forms eta / F^k, with F = sum_J a_J x^J. Both maps used below
// (the relative differential and multiplication by F) preserve the torus
// weight  x-weight - sum_J a_J J , so every rank splits into weight blocks.
//
// Filtration indices follow F_k M with F_k M = 0 for k <= 0. The Hodge-module
// indexing F_k M_ev = F_{k+n} M is recorded in reports, never applied here.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "residue/forms.hpp"

namespace residue {

struct UniversalHypersurface {
    ProblemSpec spec;
    BigradedPoly F;
    std::vector<BigradedPoly> partials;  // dF/dx_i, bidegree (1, d-1)
    std::vector<Exponent> a_monomials;   // a_j <-> x^{a_monomials[j]}
};

UniversalHypersurface make_universal(const ProblemSpec& spec);

/// Torus weight of a^alpha x^beta dx_I: beta + e_I - sum_j alpha_j J_j.
Exponent torus_weight(const UniversalHypersurface& uh, const FormKey& key);

struct WSpace {
    int k = 0;
    int p = 0;
    NumeratorBasis basis;

    Index dim() const { return basis.dim(); }
};

struct CharModuleRow {
    int k = 0;
    std::size_t dim_C = 0;    // exterior-calculus path
    std::size_t dim_UJR = 0;  // universal Jacobian ring path
    bool agree = false;
    std::optional<std::uint64_t> closed_form;  // n = 1 only
};

struct CharModuleTable {
    ProblemSpec spec;
    std::vector<CharModuleRow> rows;
    /// Smallest k from which every row of the table agrees.
    std::optional<int> onset;

    bool all_agree() const;
    bool closed_form_matches() const;
};

/// binom(k+d-2, d-2) (k(d+2) - 1): the graded pieces for n = 1, from the
/// splitting O(d+2)^{d-1} of the normal bundle of the rational normal curve.
std::uint64_t rational_normal_curve_piece(int d, int k);

/// dim F^{n+1-k} H^{n+i}(P^n) / F^{n-k} H^{n+i-2}(P^n), in {0, 1}.
std::size_t hodge_bookkeeping(int n, int k, int i);

/// Holds the universal hypersurface and memoizes the expensive ranks.
/// Not thread-safe; the rank computations themselves run in parallel.
class UniversalFamily {
public:
    explicit UniversalFamily(const ProblemSpec& spec);

    const ProblemSpec& spec() const { return uh_.spec; }
    const UniversalHypersurface& hypersurface() const { return uh_; }

    /// W_k^p; the zero space for k <= 0.
    WSpace w_space(int k, int p) const;
    /// Closed-form dimension bott_h(n,p,0,kd) * dim Q[a]_k.
    std::uint64_t w_dim(int k, int p) const;

    /// Matrix of W_k^p -> W_{k+1}^{p+1}: columns are basis elements of
    /// W_k^p, rows the ambient form coordinates of the target.
    ExactMatrix rel_differential_matrix(int k, int p) const;
    std::size_t rel_differential_rank(int k, int p);
    /// Applies the differential twice to `trials` pseudo-random elements of
    /// W_k^p; returns the number of nonzero results.
    std::size_t count_nonzero_d_squared(int k, int p, int trials, std::uint64_t seed) const;
    /// Counts elements whose differential fails iota_E = 0.
    std::size_t count_euler_violations(int k, int p, int trials, std::uint64_t seed) const;

    std::size_t n0_sections_dim(int k);
    std::size_t fkM_sections_dim(int k);
    std::size_t f1M_rank() const;
    std::size_t char_module_piece(int k);
    std::size_t universal_jacobian_piece(int k) const;
    CharModuleTable char_module_table(int k_min, int k_max);
    bool goodness_surjectivity(int k) const;
    std::size_t intermediate_cohomology(int k, int i);

    /// dim W_k^n / F W_{k-1}^n, the graded piece of the auxiliary module.
    std::size_t aux_char_module_piece(int k);
    /// Rank of multiplication by F on W_{k-1}^n.
    std::size_t raise_rank(int k);

private:
    /// Weight blocks of a numerator basis (indices into basis.elements).
    std::map<Exponent, std::vector<Index>> weight_blocks(const NumeratorBasis& basis) const;
    /// Rank of the differential on W_k^p, per torus weight.
    const std::map<Exponent, std::size_t>& rel_differential_block_ranks(int k, int p);

    UniversalHypersurface uh_;
    std::map<std::pair<int, int>, std::map<Exponent, std::size_t>> d_rank_cache_;
    std::map<int, std::size_t> char_cache_;
    std::map<int, std::size_t> raise_cache_;
};

// Free-function forms of the family operations.
WSpace w_space(const ProblemSpec& spec, int k, int p);
ExactMatrix rel_differential_matrix(const ProblemSpec& spec, int k, int p);
std::size_t n0_sections_dim(const ProblemSpec& spec, int k);
std::size_t fkM_sections_dim(const ProblemSpec& spec, int k);
std::size_t f1M_rank(const ProblemSpec& spec);
std::size_t char_module_piece(const ProblemSpec& spec, int k);
std::size_t universal_jacobian_piece(const ProblemSpec& spec, int k);
CharModuleTable char_module_table(const ProblemSpec& spec, int k_min, int k_max);
bool goodness_surjectivity(const ProblemSpec& spec, int k);
std::size_t intermediate_cohomology(const ProblemSpec& spec, int k, int i);

/// The fiber of the characteristic module over the point f of P:
/// dim (S/J(f))_{kd-n-1}.
std::size_t fiber_charmodule_dim(const ProblemSpec& spec, const HomogPoly& f, int k);

}  // namespace residue
