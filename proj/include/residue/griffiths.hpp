#pragma once

// Residue calculus for a single hypersurface D = {f = 0} in P^n.
//
// Pole-order description of the Hodge filtration on the cohomology of the
// complement and on the vanishing cohomology of D, computed with rational
// forms eta / f^k, together with the Jacobian-ring description used as an
// independent check.

#include <stdexcept>
#include <vector>

#include "residue/forms.hpp"

namespace residue {

class SingularDivisor : public std::invalid_argument {
public:
    SingularDivisor() : std::invalid_argument("pole-order formula requires smooth divisor") {}
};

/// H^0(Omega^p(D)) -> H^0(Omega^{p+1}(2D)) -> ... -> H^0(Omega^n((n-p+1)D)).
/// terms[i] holds the numerators of form degree p+i and pole order i+1;
/// differentials[i] maps basis coordinates of terms[i] to the ambient
/// coordinates of terms[i+1].
struct PoleComplex {
    int p = 0;
    BigradedPoly denominator;
    std::vector<NumeratorBasis> terms;
    std::vector<ExactMatrix> differentials;

    /// Applies consecutive differentials to every basis element; true iff
    /// all composites vanish exactly.
    bool composites_vanish() const;
};

PoleComplex build_pole_complex(const HomogPoly& f, int p);

/// dim F^p H^q(P^n \ D) for q = p..n (entry q - p). Throws SingularDivisor.
std::vector<std::size_t> pole_complex_cohomology(const HomogPoly& f, int p);

struct HodgeReport {
    HomogPoly f;
    bool smooth = false;
    /// dim Gr_F^{n-k} H^{n-1}_van(D) for k = 1..n (entry k-1).
    std::vector<std::size_t> graded_dims;
    /// dim F^{n-k} H^{n-1}_van(D) for k = 1..n.
    std::vector<std::size_t> filtration_dims;
    std::size_t total = 0;
    /// dim (S/J(f))_{kd-n-1} for k = 1..n.
    std::vector<std::size_t> jacobian_dims;

    bool paths_agree() const { return graded_dims == jacobian_dims; }
};

/// Spans F^{n+1-k} H^n_0(P^n) inside the numerators of Omega^n(kD). The
/// primitive middle cohomology of projective space is zero, so this is
/// always empty; the quotient below still subtracts it.
std::vector<SparseVector> primitive_cohomology_span(const NumeratorBasis& top, int n, int k);

HodgeReport vanishing_hodge_numbers(const HomogPoly& f);

/// True iff the form-calculus and Jacobian-ring graded dimensions agree.
bool jacobian_ring_check(const HomogPoly& f);

}  // namespace residue
