#include "residue/griffiths.hpp"

namespace residue {

namespace {

void require_smooth(const HomogPoly& f) {
    if (!is_smooth(f)) throw SingularDivisor();
}

std::vector<SparseVector> differential_images(const NumeratorBasis& source, const BigradedPoly& denom,
                                              const FormSpace& target) {
    std::vector<SparseVector> out;
    out.reserve(source.dim());
    for (const auto& eta : source.elements)
        out.push_back(pole_differential(source.ambient, eta, source.pole_order, denom, target));
    return out;
}

}  // namespace

PoleComplex build_pole_complex(const HomogPoly& f, int p) {
    const int n = f.n_vars() - 1;
    if (p < 0 || p > n) throw std::out_of_range("pole complex level out of range");
    PoleComplex cx{p, BigradedPoly::from_x(f), {}, {}};
    for (int q = p; q <= n; ++q) cx.terms.push_back(pole_numerators(cx.denominator, q, q - p + 1));
    for (std::size_t i = 0; i + 1 < cx.terms.size(); ++i) {
        const auto images = differential_images(cx.terms[i], cx.denominator, cx.terms[i + 1].ambient);
        cx.differentials.push_back(ExactMatrix::from_columns(cx.terms[i + 1].ambient.dim(), images));
    }
    return cx;
}

bool PoleComplex::composites_vanish() const {
    for (std::size_t i = 0; i + 2 < terms.size(); ++i) {
        const auto& mid = terms[i + 1];
        for (const auto& col : differentials[i].column_vectors()) {
            const auto twice = pole_differential(mid.ambient, col, mid.pole_order, denominator, terms[i + 2].ambient);
            if (!twice.empty()) return false;
        }
    }
    return true;
}

std::vector<std::size_t> pole_complex_cohomology(const HomogPoly& f, int p) {
    require_smooth(f);
    const ProblemSpec spec(f.n_vars() - 1, f.degree());
    if (!check_ampleness_condition(spec, spec.n + 1)) throw std::logic_error("ampleness condition failed on P^n");
    const PoleComplex cx = build_pole_complex(f, p);
    std::vector<std::size_t> ranks;
    for (const auto& m : cx.differentials) ranks.push_back(rank(m));
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cx.terms.size(); ++i) {
        std::size_t h = cx.terms[i].dim();
        if (i < ranks.size()) h -= ranks[i];
        if (i > 0) h -= ranks[i - 1];
        out.push_back(h);
    }
    return out;
}

std::vector<SparseVector> primitive_cohomology_span(const NumeratorBasis& /*top*/, int /*n*/, int /*k*/) {
    return {};
}

HodgeReport vanishing_hodge_numbers(const HomogPoly& f) {
    HodgeReport rep{f, is_smooth(f), {}, {}, 0, {}};
    if (!rep.smooth) throw SingularDivisor();
    const int n = f.n_vars() - 1;
    const int d = f.degree();
    const BigradedPoly denom = BigradedPoly::from_x(f);
    for (int k = 1; k <= n; ++k) {
        const NumeratorBasis top = pole_numerators(denom, n, k);
        std::vector<SparseVector> exact_part = primitive_cohomology_span(top, n, k);
        if (k > 1) {
            const NumeratorBasis lower = pole_numerators(denom, n - 1, k - 1);
            for (auto& v : differential_images(lower, denom, top.ambient)) exact_part.push_back(std::move(v));
        }
        const std::size_t filtration = top.dim() - span_dim(exact_part, top.ambient.dim());
        std::vector<SparseVector> with_lower = exact_part;
        if (k > 1) {
            const NumeratorBasis same_degree = pole_numerators(denom, n, k - 1);
            for (const auto& eta : same_degree.elements)
                with_lower.push_back(pole_raise(same_degree.ambient, eta, denom, top.ambient));
        }
        const std::size_t graded = top.dim() - span_dim(with_lower, top.ambient.dim());
        rep.filtration_dims.push_back(filtration);
        rep.graded_dims.push_back(graded);
        rep.total += graded;
        rep.jacobian_dims.push_back(quotient_ring_dim(f, k * d - n - 1));
    }
    return rep;
}

bool jacobian_ring_check(const HomogPoly& f) { return vanishing_hodge_numbers(f).paths_agree(); }

}  // namespace residue
