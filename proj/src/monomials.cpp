#include "residue/monomials.hpp"

#include <numeric>
#include <stdexcept>

namespace residue {

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) / i is exact at every step.
        const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
        const std::uint64_t g = std::gcd(r, static_cast<std::uint64_t>(i));
        r = (r / g) * (num / (static_cast<std::uint64_t>(i) / g));
    }
    return r;
}

std::uint64_t monomial_count(int n_vars, int degree) {
    if (degree < 0 || n_vars < 0) return 0;
    if (n_vars == 0) return degree == 0 ? 1 : 0;
    return binomial(degree + n_vars - 1, n_vars - 1);
}

namespace {

void fill(int var, int remaining, Exponent& cur, std::vector<Exponent>& out) {
    const int n = static_cast<int>(cur.size());
    if (var == n - 1) {
        cur[var] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[var] = e;
        fill(var + 1, remaining - e, cur, out);
    }
    cur[var] = 0;
}

}  // namespace

std::vector<Exponent> monomial_basis(int n_vars, int degree) {
    std::vector<Exponent> out;
    if (degree < 0 || n_vars < 0) return out;
    if (n_vars == 0) {
        if (degree == 0) out.emplace_back();
        return out;
    }
    out.reserve(monomial_count(n_vars, degree));
    Exponent cur(n_vars, 0);
    fill(0, degree, cur, out);
    return out;
}

int total_degree(const Exponent& exp) { return std::accumulate(exp.begin(), exp.end(), 0); }

Exponent operator+(const Exponent& a, const Exponent& b) {
    if (a.size() != b.size()) throw DimensionMismatch("exponent length mismatch");
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Index monomial_rank(const Exponent& exp) {
    // Exponents with a larger leading entry come first.
    Index r = 0;
    int remaining = total_degree(exp);
    const int n = static_cast<int>(exp.size());
    for (int v = 0; v + 1 < n; ++v) {
        if (exp[v] < 0) throw std::invalid_argument("negative exponent");
        for (int e = remaining; e > exp[v]; --e) r += monomial_count(n - v - 1, remaining - e);
        remaining -= exp[v];
    }
    return r;
}

MonomialSpace::MonomialSpace(int n_vars, int degree)
    : n_vars_(n_vars), degree_(degree), basis_(monomial_basis(n_vars, degree)) {}

Index MonomialSpace::index(const Exponent& exp) const {
    if (static_cast<int>(exp.size()) != n_vars_ || total_degree(exp) != degree_)
        throw DimensionMismatch("exponent does not belong to this monomial space");
    return monomial_rank(exp);
}

}  // namespace residue
