#pragma once

// Jet separation at finitely many points of P^n and the codimension counts
// for the strata of hypersurfaces with N nodes or with a point of
// multiplicity r.

#include <cstdint>
#include <vector>

#include "residue/jacobian.hpp"

namespace residue {

using ProjectivePoint = std::vector<Rational>;

struct JetSpec {
    int n = 1;
    int d = 1;
    int r = 0;
    std::vector<ProjectivePoint> points;

    /// Throws on wrong coordinate counts, zero vectors, r < 0 and
    /// proportional (coincident) points.
    void validate() const;
    std::uint64_t conditions_per_point() const { return binomial(n + r, n); }
};

bool proportional(const ProjectivePoint& u, const ProjectivePoint& v);

/// S_d -> jets of order r at each point, in the affine chart of the
/// largest coordinate. Rows: point-major, derivative multi-indices in
/// graded-lex order; columns: monomial order of S_d.
ExactMatrix jet_matrix(const JetSpec& spec);

/// True iff the jet matrix has full row rank.
bool jet_separation_check(const JetSpec& spec);

struct StrataMode {
    enum class Kind { MultiNode, Multiplicity };
    Kind kind = Kind::MultiNode;
    int value = 1;  // N for MultiNode, r for Multiplicity

    static StrataMode nodes(int N) { return {Kind::MultiNode, N}; }
    static StrataMode multiplicity(int r) { return {Kind::Multiplicity, r}; }
};

struct StrataTrial {
    std::vector<ProjectivePoint> points;
    std::size_t rank = 0;
};

struct StrataReport {
    ProblemSpec spec;
    StrataMode mode;
    int trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t conditions = 0;  // rows of the jet matrix
    std::size_t min_rank = 0;
    long observed_codim = 0;
    long bound = 0;
    bool pass = false;
    std::vector<StrataTrial> samples;
};

/// Random points with coordinates in [-5, 5], pairwise non-proportional.
std::vector<ProjectivePoint> random_points(int n, int count, std::uint64_t& state);

StrataReport stratum_codim_estimate(const ProblemSpec& spec, StrataMode mode, int trials, std::uint64_t seed);

/// Whether S_{kd-n-1} surjects onto the functions on the singular scheme of f.
bool fiber_surjectivity_check(const HomogPoly& f, int k);

}  // namespace residue
