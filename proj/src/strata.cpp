#include "residue/strata.hpp"

#include <future>
#include <random>
#include <stdexcept>

namespace residue {

bool proportional(const ProjectivePoint& u, const ProjectivePoint& v) {
    if (u.size() != v.size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (u[i] * v[j] != u[j] * v[i]) return false;
    return true;
}

void JetSpec::validate() const {
    if (n < 1) throw std::invalid_argument("jet spec requires n >= 1");
    if (d < 0) throw std::invalid_argument("jet spec requires d >= 0");
    if (r < 0) throw std::invalid_argument("jet order must be nonnegative");
    for (const auto& x : points) {
        if (x.size() != static_cast<std::size_t>(n + 1)) throw DimensionMismatch("point has the wrong number of coordinates");
        bool nonzero = false;
        for (const auto& c : x) nonzero = nonzero || !is_zero(c);
        if (!nonzero) throw std::invalid_argument("zero vector is not a projective point");
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (proportional(points[i], points[j])) throw std::invalid_argument("coincident points");
}

namespace {

Rational falling(int b, int a) {
    Rational out(1);
    for (int t = 0; t < a; ++t) out *= b - t;
    return out;
}

}  // namespace

ExactMatrix jet_matrix(const JetSpec& spec) {
    spec.validate();
    const int n = spec.n;
    const auto columns = monomial_basis(n + 1, spec.d);
    const auto orders = [&] {
        std::vector<Exponent> all;
        for (int s = 0; s <= spec.r; ++s)
            for (auto& a : monomial_basis(n, s)) all.push_back(std::move(a));
        return all;
    }();
    ExactMatrix m(spec.points.size() * orders.size(), columns.size());
    for (std::size_t pt = 0; pt < spec.points.size(); ++pt) {
        const auto& x = spec.points[pt];
        std::size_t chart = 0;
        for (std::size_t i = 1; i < x.size(); ++i)
            if (abs(x[i]) > abs(x[chart])) chart = i;
        std::vector<int> affine;  // homogeneous index of each affine variable
        std::vector<Rational> y;
        for (int i = 0; i <= n; ++i)
            if (static_cast<std::size_t>(i) != chart) {
                affine.push_back(i);
                y.push_back(x[i] / x[chart]);
            }
        for (std::size_t o = 0; o < orders.size(); ++o) {
            const auto& alpha = orders[o];
            for (std::size_t c = 0; c < columns.size(); ++c) {
                Rational entry(1);
                for (int j = 0; j < n && !is_zero(entry); ++j) {
                    const int b = columns[c][affine[j]];
                    if (b < alpha[j]) {
                        entry = 0;
                        break;
                    }
                    Rational power(1);
                    for (int t = 0; t < b - alpha[j]; ++t) power *= y[j];
                    entry *= falling(b, alpha[j]) * power;
                }
                if (!is_zero(entry)) m.set(pt * orders.size() + o, c, entry);
            }
        }
    }
    return m;
}

bool jet_separation_check(const JetSpec& spec) {
    const ExactMatrix m = jet_matrix(spec);
    return rank(m) == m.rows();
}

std::vector<ProjectivePoint> random_points(int n, int count, std::uint64_t& state) {
    std::mt19937_64 rng(state);
    std::vector<ProjectivePoint> pts;
    while (static_cast<int>(pts.size()) < count) {
        ProjectivePoint x(n + 1);
        bool nonzero = false;
        for (auto& c : x) {
            c = static_cast<long>(rng() % 11) - 5;
            nonzero = nonzero || !is_zero(c);
        }
        if (!nonzero) continue;
        bool fresh = true;
        for (const auto& q : pts) fresh = fresh && !proportional(q, x);
        if (fresh) pts.push_back(std::move(x));
    }
    state = rng();
    return pts;
}

StrataReport stratum_codim_estimate(const ProblemSpec& spec, StrataMode mode, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("stratum estimate requires trials >= 1");
    if (mode.value < 1) throw std::invalid_argument("stratum parameter must be positive");
    const bool nodes = mode.kind == StrataMode::Kind::MultiNode;
    const int count = nodes ? mode.value : 1;
    const int order = nodes ? 1 : mode.value - 1;

    StrataReport rep;
    rep.spec = spec;
    rep.mode = mode;
    rep.trials = trials;
    rep.seed = seed;
    rep.conditions = count * binomial(spec.n + order, spec.n);

    std::uint64_t state = seed;
    std::vector<JetSpec> jobs;
    for (int t = 0; t < trials; ++t) jobs.push_back({spec.n, spec.d, order, random_points(spec.n, count, state)});
    std::vector<std::future<std::size_t>> ranks;
    for (const auto& job : jobs) ranks.push_back(std::async(std::launch::async, [&job] { return rank(jet_matrix(job)); }));
    for (std::size_t t = 0; t < jobs.size(); ++t) rep.samples.push_back({jobs[t].points, ranks[t].get()});

    rep.min_rank = rep.samples.front().rank;
    for (const auto& s : rep.samples) rep.min_rank = std::min(rep.min_rank, s.rank);
    const long moduli = static_cast<long>(count) * spec.n;
    rep.observed_codim = static_cast<long>(rep.min_rank) - moduli;
    rep.bound = nodes ? mode.value : mode.value - 1;
    rep.pass = rep.observed_codim >= rep.bound;
    return rep;
}

bool fiber_surjectivity_check(const HomogPoly& f, int k) {
    const TjurinaResult tj = tjurina_total(f);
    if (!tj.isolated()) throw std::invalid_argument("positive-dimensional singular locus");
    const int e = k * f.degree() - f.n_vars();
    return singular_scheme_image_dim(f, e, tj) == *tj.tau;
}

}  // namespace residue
