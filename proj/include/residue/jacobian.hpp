#pragma once

#include <optional>
#include <vector>

#include "residue/polynomial.hpp"

namespace residue {

/// Degree-d hypersurfaces in P^n. The parameter space P is the projective
/// space of the coefficient vector, so dim V = C(n+d, n) and dim P = dim V - 1.
struct ProblemSpec {
    int n = 1;
    int d = 2;

    ProblemSpec() = default;
    ProblemSpec(int n_, int d_);

    std::uint64_t dim_V() const { return binomial(n + d, n); }
    std::uint64_t dim_P() const { return dim_V() - 1; }
    /// Socle degree (n+1)(d-2) of the Jacobian ring of a smooth member.
    int socle_degree() const { return (n + 1) * (d - 2); }
};

struct JacobianData {
    HomogPoly f;
    std::vector<HomogPoly> partials;
};

/// The n+1 partial derivatives of f; verifies the Euler relation.
JacobianData jacobian_generators(const HomogPoly& f);

/// Basis of the degree-e part of the ideal generated by homogeneous
/// generators, in monomial coordinates of S_e.
SubspaceBasis ideal_graded_piece(const std::vector<HomogPoly>& generators, int target_degree);

/// dim (S / J(f))_e.
std::size_t quotient_ring_dim(const HomogPoly& f, int e);

bool is_smooth(const HomogPoly& f);

struct TjurinaResult {
    /// Stabilized value; empty when the quotient dimensions never settle
    /// (positive-dimensional singular locus).
    std::optional<std::size_t> tau;
    /// First degree of the stabilization window.
    int onset = -1;
    std::vector<std::size_t> scanned_dims;
    int scan_start = 0;

    bool isolated() const { return tau.has_value(); }
};

/// Reads off the Tjurina total as the value at which dim (S/J)_e stays
/// constant over n+2 consecutive degrees past the socle degree. This is a
/// stabilization heuristic, reported as such.
TjurinaResult tjurina_total(const HomogPoly& f);

/// Rank of S_e -> O_Y (Y the singular scheme of f), computed as
/// dim S_e - dim (J^sat)_e with the saturation taken in a degree where the
/// quotient has stabilized. Requires an isolated singular locus.
std::size_t singular_scheme_image_dim(const HomogPoly& f, int e, const TjurinaResult& tj);

}  // namespace residue
