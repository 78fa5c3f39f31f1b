#include "residue/jacobian.hpp"

#include <sstream>
#include <stdexcept>

namespace residue {

ProblemSpec::ProblemSpec(int n_, int d_) : n(n_), d(d_) {
    if (n < 1) throw std::invalid_argument("ProblemSpec: n must be at least 1");
    if (d < 2) throw std::invalid_argument("ProblemSpec: d must be at least 2");
}

JacobianData jacobian_generators(const HomogPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("jacobian_generators: zero polynomial");
    if (f.degree() < 1) throw std::invalid_argument("jacobian_generators: degree must be positive");
    JacobianData jd{f, {}};
    HomogPoly euler(f.n_vars(), f.degree());
    for (int i = 0; i < f.n_vars(); ++i) {
        jd.partials.push_back(partial(f, i));
        euler += multiply(HomogPoly::variable(f.n_vars(), i), jd.partials.back());
    }
    if (!(euler == f * Rational(f.degree())))
        throw std::logic_error("Euler relation failed for Jacobian data");
    return jd;
}

SubspaceBasis ideal_graded_piece(const std::vector<HomogPoly>& generators, int target_degree) {
    SubspaceBasis out;
    if (target_degree < 0) return out;
    std::vector<SparseVector> products;
    int n_vars = -1;
    for (const auto& g : generators) {
        if (n_vars < 0) n_vars = g.n_vars();
        if (g.n_vars() != n_vars) throw DimensionMismatch("generators with different variable counts");
        if (g.is_zero()) continue;
        const int comp = target_degree - g.degree();
        if (comp < 0) continue;
        for (const auto& m : monomial_basis(g.n_vars(), comp))
            products.push_back(multiply(HomogPoly::monomial(m), g).coordinates());
    }
    const Index ambient = n_vars < 0 ? 0 : monomial_count(n_vars, target_degree);
    return independent_subset(ambient, products);
}

std::size_t quotient_ring_dim(const HomogPoly& f, int e) {
    if (e < 0) return 0;
    const auto jd = jacobian_generators(f);
    const auto piece = ideal_graded_piece(jd.partials, e);
    return monomial_count(f.n_vars(), e) - piece.dim();
}

bool is_smooth(const HomogPoly& f) {
    const ProblemSpec spec(f.n_vars() - 1, f.degree());
    return quotient_ring_dim(f, spec.socle_degree() + 1) == 0;
}

TjurinaResult tjurina_total(const HomogPoly& f) {
    const int n = f.n_vars() - 1;
    const int window = n + 2;
    const int start = (n + 1) * (f.degree() - 2) + 1;
    const int max_degree = start + 4 * window;
    TjurinaResult res;
    res.scan_start = start;
    for (int e = start; e <= max_degree; ++e) {
        res.scanned_dims.push_back(quotient_ring_dim(f, e));
        const int len = static_cast<int>(res.scanned_dims.size());
        if (len < window) continue;
        bool flat = true;
        for (int k = len - window; k < len; ++k)
            flat = flat && res.scanned_dims[k] == res.scanned_dims[len - 1];
        if (flat) {
            res.tau = res.scanned_dims.back();
            res.onset = start + len - window;
            return res;
        }
    }
    return res;
}

std::size_t singular_scheme_image_dim(const HomogPoly& f, int e, const TjurinaResult& tj) {
    if (!tj.isolated()) throw std::invalid_argument("positive-dimensional singular locus");
    if (e < 0) return 0;
    const int n_vars = f.n_vars();
    const int stable = tj.onset + n_vars;  // last degree of the window
    const int shift = std::max(0, stable - e);
    const int top = e + shift;
    const auto jd = jacobian_generators(f);
    const auto ideal = ideal_graded_piece(jd.partials, top);
    const Index top_dim = monomial_count(n_vars, top);

    Echelon<Rational> ideal_ech(top_dim);
    for (const auto& v : ideal.vectors) ideal_ech.insert(v);

    const auto multipliers = monomial_basis(n_vars, shift);
    std::vector<SparseVector> images;
    for (const auto& g : monomial_basis(n_vars, e)) {
        SparseVector row;
        for (Index mu = 0; mu < multipliers.size(); ++mu) {
            const auto rem = ideal_ech.reduce(HomogPoly::monomial(g + multipliers[mu]).coordinates());
            for (const auto& [i, c] : rem) row.emplace_back(mu * top_dim + i, c);
        }
        images.push_back(std::move(row));
    }
    return span_dim(images, multipliers.size() * top_dim);
}

}  // namespace residue
