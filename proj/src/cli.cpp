#include "residue/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "residue/fixtures.hpp"
#include "residue/griffiths.hpp"
#include "residue/poly_text.hpp"
#include "residue/strata.hpp"
#include "residue/universal.hpp"

namespace residue {

using nlohmann::json;

void RunConfig::validate() const {
    if (n && *n < 1) throw UsageError("--n must be at least 1");
    if (d && *d < 2) throw UsageError("--d must be at least 2");
    if (k_max < 1) throw UsageError("--kmax must be at least 1");
    if (trials < 1) throw UsageError("--trials must be at least 1");
    if (poly && poly_file) throw UsageError("--poly and --poly-file are mutually exclusive");
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Info: return "info";
    }
    return "info";
}

bool ReportEnvelope::all_pass() const {
    for (const auto& c : checks)
        if (c.verdict == Verdict::Fail) return false;
    return true;
}

int ReportEnvelope::exit_code() const { return all_pass() ? 0 : 1; }

json exact(std::uint64_t v) { return std::to_string(v); }
json exact(long v) { return std::to_string(v); }
json exact(const Rational& q) { return to_string(q); }
json exact(const std::vector<std::size_t>& v) {
    json a = json::array();
    for (auto x : v) a.push_back(std::to_string(x));
    return a;
}

namespace {

json exact_int(int v) { return std::to_string(v); }

Verdict verdict_of(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

json spec_inputs(const ProblemSpec& spec) { return {{"n", exact_int(spec.n)}, {"d", exact_int(spec.d)}}; }

std::string family_label(const ProblemSpec& spec) {
    return "n=" + std::to_string(spec.n) + ",d=" + std::to_string(spec.d);
}

std::size_t genus(int d) { return static_cast<std::size_t>((d - 1) * (d - 2) / 2); }

std::uint64_t choose(int a, int b) { return binomial(a, b); }

/// Random element of a numerator basis as a rational form over F.
SparseVector random_combination(const NumeratorBasis& basis, std::mt19937_64& rng) {
    SparseVector v;
    const int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        const auto& e = basis.elements[rng() % basis.elements.size()];
        const long coeff = static_cast<long>(rng() % 7) - 3;
        for (const auto& [i, x] : e) v.emplace_back(i, x * coeff);
    }
    return canonicalize(std::move(v));
}

struct HodgeFacts {
    bool smooth = false;
    HodgeReport report{HomogPoly(1, 0), false, {}, {}, 0, {}};
    std::optional<std::size_t> tau;
};

HodgeFacts hodge_facts(const HomogPoly& f) {
    HodgeFacts h;
    h.smooth = is_smooth(f);
    if (h.smooth)
        h.report = vanishing_hodge_numbers(f);
    else
        h.tau = tjurina_total(f).tau;
    return h;
}

json hodge_inputs(const HomogPoly& f, const std::string& label) {
    return {{"label", label},
            {"poly", render_poly(f)},
            {"n", exact_int(f.n_vars() - 1)},
            {"d", exact_int(f.degree())}};
}

json hodge_computed(const HodgeFacts& h) {
    json out = {{"smooth", h.smooth}};
    if (h.smooth) {
        out["graded_dims"] = exact(h.report.graded_dims);
        out["filtration_dims"] = exact(h.report.filtration_dims);
        out["jacobian_dims"] = exact(h.report.jacobian_dims);
        out["total"] = exact(std::uint64_t(h.report.total));
    } else {
        out["tjurina"] = h.tau ? json(std::to_string(*h.tau)) : json("non-isolated");
    }
    return out;
}

Check singular_check(const HomogPoly& f, const std::string& name, const std::string& label, const HodgeFacts& h) {
    Check c{name, hodge_inputs(f, label), hodge_computed(h), {}, Verdict::Fail,
            "pole-order formula requires smooth divisor"};
    return c;
}

/// Pole-complex cohomology against the Jacobian-ring count of F^p H^n.
Check pole_complex_check(const HomogPoly& f, const std::string& label, int p) {
    const int n = f.n_vars() - 1;
    const int d = f.degree();
    Check c{"pole-complex/" + label + "/p=" + std::to_string(p), hodge_inputs(f, label), {}, {}, Verdict::Info, ""};
    c.inputs["p"] = exact_int(p);
    const auto dims = pole_complex_cohomology(f, p);
    const bool closed = build_pole_complex(f, p).composites_vanish();
    std::vector<std::size_t> expect;
    for (int q = p; q <= n; ++q) {
        std::size_t e = q == 0 ? 1 : 0;
        if (q == n)
            for (int k = 1; k <= n - p + 1; ++k) e += quotient_ring_dim(f, k * d - n - 1);
        expect.push_back(e);
    }
    c.computed = {{"cohomology", exact(dims)}, {"composites_vanish", closed}};
    c.expected.push_back({"cohomology", exact(expect),
                          "H^q of the complement vanishes for 0<q<n; top piece is the sum of Jacobian-ring pieces "
                          "of pole order at most n-p+1"});
    c.verdict = verdict_of(closed && dims == expect);
    return c;
}

}  // namespace

std::uint64_t family_size(int n, int d, int k_max) {
    mpz_class dim_v, count;
    mpz_bin_uiui(dim_v.get_mpz_t(), n + d, n);
    mpz_class top = bott_h(n, n, 0, k_max * d);
    mpz_class a;
    mpz_bin_ui(a.get_mpz_t(), mpz_class(k_max + dim_v - 1).get_mpz_t(), k_max);
    count = top * a;
    return count.fits_ulong_p() ? count.get_ui() : UINT64_MAX;
}

HomogPoly random_smooth_form(int n, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto basis = monomial_basis(n + 1, d);
    for (;;) {
        HomogPoly f(n + 1, d);
        for (const auto& e : basis) f.add_term(e, Rational(static_cast<long>(rng() % 7) - 3));
        if (!f.is_zero() && is_smooth(f)) return f;
    }
}

// ---------------------------------------------------------------------------
// Family suites

std::vector<Check> hodge_suite(const HomogPoly& f, const std::string& label) {
    const HodgeFacts h = hodge_facts(f);
    if (!h.smooth) return {singular_check(f, "hodge/" + label, label, h)};
    const int n = f.n_vars() - 1;
    const int d = f.degree();
    Check c{"hodge/" + label, hodge_inputs(f, label), hodge_computed(h), {}, Verdict::Pass, ""};
    bool ok = h.report.paths_agree();
    c.expected.push_back({"graded_dims", exact(h.report.jacobian_dims), "Jacobian ring pieces (S/J)_{kd-n-1}"});
    if (n == 2) {
        const std::size_t g = genus(d);
        c.expected.push_back({"graded_dims", exact(std::vector<std::size_t>{g, g}), "genus (d-1)(d-2)/2 of a plane curve"});
        c.expected.push_back({"total", exact(std::uint64_t(2 * g)), "first Betti number 2g"});
        ok = ok && h.report.graded_dims == std::vector<std::size_t>{g, g} && h.report.total == 2 * g;
    }
    c.verdict = verdict_of(ok);
    std::vector<Check> out{c};
    out.push_back(pole_complex_check(f, label, 0));
    return out;
}

std::vector<Check> charmod_suite(const ProblemSpec& spec, int k_max) {
    std::vector<Check> out;
    int k_min = 1;
    while (k_min * spec.d - spec.n - 1 < 0) ++k_min;
    UniversalFamily fam(spec);
    Check c{"charmod/" + family_label(spec), spec_inputs(spec), {}, {}, Verdict::Info, ""};
    c.inputs["k_min"] = exact_int(k_min);
    c.inputs["k_max"] = exact_int(k_max);
    if (k_min > k_max) {
        c.note = "no k in range with kd-n-1 >= 0";
        out.push_back(c);
        return out;
    }
    const CharModuleTable table = fam.char_module_table(k_min, k_max);
    json rows = json::array();
    bool ok = table.closed_form_matches();
    for (const auto& r : table.rows) {
        json row = {{"k", exact_int(r.k)},
                    {"dim_C", exact(std::uint64_t(r.dim_C))},
                    {"dim_UJR", exact(std::uint64_t(r.dim_UJR))},
                    {"agree", r.agree}};
        if (r.closed_form) row["closed_form"] = exact(*r.closed_form);
        rows.push_back(row);
        if (r.k >= 2 && !r.agree) ok = false;
    }
    c.computed = {{"rows", rows}, {"onset", table.onset ? json(std::to_string(*table.onset)) : json(nullptr)}};
    c.computed["indexing"] = "F_k M with F_k M = 0 for k <= 0; Hodge-module index is k + n";
    if (spec.n == 1) {
        json closed = json::array();
        for (const auto& r : table.rows) closed.push_back(exact(rational_normal_curve_piece(spec.d, r.k)));
        c.expected.push_back(
            {"dim_C = dim_UJR", closed, "normal bundle O(d+2)^(d-1) of the rational normal curve"});
    } else {
        c.expected.push_back({"agree", "true for every k >= 2", "two independent computations"});
    }
    c.verdict = verdict_of(ok);
    out.push_back(c);

    // Multiplication by F embeds W_{k-1}^n into W_k^n.
    Check aux{"aux-module/" + family_label(spec), spec_inputs(spec), {}, {}, Verdict::Info, ""};
    json pieces = json::array();
    bool injective = true;
    for (int k = 1; k <= k_max; ++k) {
        const std::uint64_t lower = fam.w_dim(k - 1, spec.n);
        const std::size_t raised = fam.raise_rank(k);
        injective = injective && raised == lower;
        pieces.push_back({{"k", exact_int(k)},
                          {"dim", exact(std::uint64_t(fam.aux_char_module_piece(k)))},
                          {"raise_rank", exact(std::uint64_t(raised))}});
    }
    aux.computed = {{"pieces", pieces}};
    aux.expected.push_back({"raise_rank", "dim W_{k-1}^n", "F is a nonzerodivisor"});
    aux.verdict = verdict_of(injective);
    out.push_back(aux);
    return out;
}

namespace {

Check lowest_level_check(UniversalFamily& fam) {
    const ProblemSpec& spec = fam.spec();
    Check c{"lowest-level/" + family_label(spec), spec_inputs(spec), {}, {}, Verdict::Info, ""};
    const std::size_t n0 = fam.n0_sections_dim(1);
    const std::size_t fk = fam.fkM_sections_dim(1);
    const std::size_t f1 = fam.f1M_rank();
    const std::uint64_t formula = choose(spec.d - 1, spec.n) * choose(spec.n + spec.d, spec.n);
    c.computed = {{"n0_sections_dim", exact(std::uint64_t(n0))},
                  {"fkM_sections_dim", exact(std::uint64_t(fk))},
                  {"f1M_rank", exact(std::uint64_t(f1))}};
    c.expected.push_back({"fkM_sections_dim", exact(formula), "binom(d-1,n) binom(n+d,n)"});
    c.expected.push_back({"fkM_sections_dim", exact(std::uint64_t(f1 * spec.dim_V())), "rank F_1 M times dim V"});
    c.verdict = verdict_of(fk == formula && fk == f1 * spec.dim_V() && n0 == fk);
    return c;
}

Check goodness_check(const UniversalFamily& fam, int k_max) {
    const ProblemSpec& spec = fam.spec();
    Check c{"goodness/" + family_label(spec), spec_inputs(spec), {}, {}, Verdict::Info, ""};
    json values = json::object();
    bool ok = true;
    for (int k = 1; k <= k_max; ++k) {
        const bool s = fam.goodness_surjectivity(k);
        values[std::to_string(k)] = s;
        if (k * spec.d - spec.n - 1 >= 0) ok = ok && s;
    }
    c.computed = {{"surjective", values}};
    c.expected.push_back({"surjective", "true whenever kd-n-1 >= 0", "products of monomials span"});
    c.verdict = verdict_of(ok);
    return c;
}

Check intermediate_check(UniversalFamily& fam, int k_max) {
    const ProblemSpec& spec = fam.spec();
    Check c{"intermediate-cohomology/" + family_label(spec), spec_inputs(spec), {}, {}, Verdict::Info, ""};
    json got = json::array(), want = json::array();
    bool ok = true;
    for (int k = 1; k <= k_max; ++k)
        for (int i = -spec.n; i <= -1; ++i) {
            const std::size_t h = fam.intermediate_cohomology(k, i);
            const std::size_t e = hodge_bookkeeping(spec.n, k, i);
            got.push_back({{"k", exact_int(k)}, {"i", exact_int(i)}, {"dim", exact(std::uint64_t(h))}});
            want.push_back({{"k", exact_int(k)}, {"i", exact_int(i)}, {"dim", exact(std::uint64_t(e))}});
            ok = ok && h == e;
        }
    c.computed = {{"cohomology", got}};
    c.expected.push_back({"cohomology", want,
                          "one-dimensional H^{2j}(P^n) filtered by F, times h^0(O_P) = 1 for the untwisted "
                          "cohomology sheaves"});
    c.verdict = verdict_of(ok);
    return c;
}

std::vector<Check> calculus_checks(const UniversalFamily& fam, int k_top, int trials, std::uint64_t seed) {
    const ProblemSpec& spec = fam.spec();
    std::vector<Check> out;
    Check sq{"d-squared/" + family_label(spec), spec_inputs(spec), {}, {}, Verdict::Info, ""};
    sq.inputs["trials"] = exact_int(trials);
    sq.inputs["seed"] = exact(seed);
    json per = json::array();
    std::size_t failures = 0, runs = 0;
    for (int k = 1; k <= k_top; ++k)
        for (int p = 0; p + 2 <= spec.n; ++p) {
            const std::size_t bad = fam.count_nonzero_d_squared(k, p, trials, seed + 1000 * k + p);
            per.push_back({{"k", exact_int(k)}, {"p", exact_int(p)}, {"failures", exact(std::uint64_t(bad))}});
            failures += bad;
            ++runs;
        }
    sq.computed = {{"runs", per}, {"failures", exact(std::uint64_t(failures))}};
    sq.expected.push_back({"failures", "0", "d o d = 0"});
    sq.verdict = runs == 0 ? Verdict::Info : verdict_of(failures == 0);
    if (runs == 0) sq.note = "no composable pair of differentials for n = 1";
    out.push_back(sq);

    // Euler closure, through the fast path and through exterior_d on the
    // assembled rational form; the two images must also coincide.
    Check eu{"euler-closure/" + family_label(spec), spec_inputs(spec), {}, {}, Verdict::Info, ""};
    eu.inputs["trials"] = exact_int(trials);
    eu.inputs["seed"] = exact(seed);
    const auto& F = fam.hypersurface().F;
    std::size_t violations = 0, mismatches = 0;
    for (int k = 1; k <= k_top; ++k)
        for (int p = 0; p < spec.n; ++p) {
            violations += fam.count_euler_violations(k, p, trials, seed + 2000 * k + p);
            const WSpace src = fam.w_space(k, p);
            const FormSpace target(F.n_a(), k + 1, F.n_x(), (k + 1) * spec.d - p - 1, p + 1);
            std::mt19937_64 rng(seed + 3000 * k + p);
            for (int t = 0; t < trials; ++t) {
                const SparseVector eta = random_combination(src.basis, rng);
                const RationalFormRep rep{src.basis.ambient.form(eta), k, F};
                const RationalFormRep dr = exterior_d(rep);
                if (!euler_contract(dr.numerator).is_zero()) ++violations;
                if (target.coordinates(dr.numerator) != pole_differential(src.basis.ambient, eta, k, F, target))
                    ++mismatches;
            }
        }
    eu.computed = {{"violations", exact(std::uint64_t(violations))}, {"path_mismatches", exact(std::uint64_t(mismatches))}};
    eu.expected.push_back({"violations", "0", "iota_E d + d iota_E = Lie derivative; closure on the kernel"});
    eu.verdict = verdict_of(violations == 0 && mismatches == 0);
    out.push_back(eu);
    return out;
}

json points_json(const std::vector<ProjectivePoint>& pts) {
    json a = json::array();
    for (const auto& x : pts) {
        json p = json::array();
        for (const auto& v : x) p.push_back(to_string(v));
        a.push_back(p);
    }
    return a;
}

Check strata_check(const ProblemSpec& spec, StrataMode mode, int trials, std::uint64_t seed) {
    const bool nodes = mode.kind == StrataMode::Kind::MultiNode;
    const std::string tag = nodes ? "N=" + std::to_string(mode.value) : "r=" + std::to_string(mode.value);
    Check c{"strata/" + family_label(spec) + "/" + tag, spec_inputs(spec), {}, {}, Verdict::Info, ""};
    c.inputs["mode"] = nodes ? "multi-node" : "multiplicity";
    c.inputs[nodes ? "N" : "r"] = exact_int(mode.value);
    c.inputs["trials"] = exact_int(trials);
    c.inputs["seed"] = exact(seed);
    const StrataReport rep = stratum_codim_estimate(spec, mode, trials, seed);
    json samples = json::array();
    for (const auto& s : rep.samples)
        samples.push_back({{"points", points_json(s.points)}, {"rank", exact(std::uint64_t(s.rank))}});
    c.computed = {{"conditions", exact(rep.conditions)},
                  {"min_rank", exact(std::uint64_t(rep.min_rank))},
                  {"observed_codim", exact(rep.observed_codim)},
                  {"samples", samples}};
    c.expected.push_back({"observed_codim", ">= " + std::to_string(rep.bound),
                          nodes ? "N nodes impose N(n+1) conditions, points move in N n dimensions"
                                : "order r-1 jets vanish, the point moves in n dimensions"});
    if (rep.min_rank < rep.conditions) {
        c.note = "jets do not separate at the sampled points; the count does not apply to this instance";
        c.verdict = Verdict::Info;
    } else {
        c.verdict = verdict_of(rep.pass);
    }
    return c;
}

}  // namespace

std::vector<Check> universal_suite(const ProblemSpec& spec, int k_max, int trials, std::uint64_t seed) {
    UniversalFamily fam(spec);
    std::vector<Check> out;

    Check dims{"w-space-dims/" + family_label(spec), spec_inputs(spec), {}, {}, Verdict::Info, ""};
    json got = json::array();
    bool ok = true;
    for (int k = 0; k <= std::min(k_max, 2); ++k)
        for (int p = 0; p <= spec.n; ++p) {
            const std::uint64_t built = fam.w_space(k, p).dim();
            got.push_back({{"k", exact_int(k)}, {"p", exact_int(p)}, {"dim", exact(built)}});
            ok = ok && built == fam.w_dim(k, p);
        }
    dims.computed = {{"dims", got}};
    dims.expected.push_back({"dim", "bott_h(n,p,0,kd) binom(k+dimV-1,dimV-1)", "Bott formula"});
    dims.verdict = verdict_of(ok);
    out.push_back(dims);

    out.push_back(lowest_level_check(fam));
    out.push_back(goodness_check(fam, k_max));
    out.push_back(intermediate_check(fam, k_max));
    for (auto& c : calculus_checks(fam, std::min(k_max, 2), trials, seed)) out.push_back(std::move(c));
    return out;
}

std::vector<Check> strata_suite(const ProblemSpec& spec, int trials, std::uint64_t seed) {
    std::vector<Check> out;
    const std::uint64_t dim_s = spec.dim_V();
    std::uint64_t offset = 0;
    for (int N = 1; N <= 3; ++N)
        if (N * binomial(spec.n + 1, spec.n) <= dim_s) out.push_back(strata_check(spec, StrataMode::nodes(N), trials, seed + offset++));
    for (int r = 2; r <= 3; ++r)
        if (binomial(spec.n + r - 1, spec.n) <= dim_s)
            out.push_back(strata_check(spec, StrataMode::multiplicity(r), trials, seed + offset++));
    return out;
}

// ---------------------------------------------------------------------------
// Default grid

namespace {

void prefix(std::vector<Check>& checks, const std::string& tag) {
    for (auto& c : checks) c.name = tag + "/" + c.name;
}

void append(std::vector<Check>& out, std::vector<Check> more, const std::string& tag) {
    prefix(more, tag);
    for (auto& c : more) out.push_back(std::move(c));
}

Check hodge_expectation(const HomogPoly& f, const std::string& name, const std::string& label, const HodgeFacts& h,
                        const std::vector<std::size_t>& graded, const std::string& provenance) {
    if (!h.smooth) return singular_check(f, name, label, h);
    Check c{name, hodge_inputs(f, label), hodge_computed(h), {}, Verdict::Info, ""};
    std::size_t total = 0;
    for (auto g : graded) total += g;
    c.expected.push_back({"graded_dims", exact(graded), provenance});
    c.expected.push_back({"total", exact(std::uint64_t(total)), provenance});
    c.verdict = verdict_of(h.report.graded_dims == graded && h.report.total == total);
    return c;
}

}  // namespace

std::vector<Check> acceptance_suite(int trials, std::uint64_t seed) {
    std::vector<Check> out;

    // Smooth fixtures, shared by the first three items.
    struct Fixture {
        std::string label;
        HomogPoly f;
    };
    std::vector<Fixture> smooth = {{"fermat-cubic", parse_poly(fixtures::fermat_cubic)},
                                   {"fermat-quartic", parse_poly(fixtures::fermat_quartic)},
                                   {"fermat-quintic", parse_poly(fixtures::fermat_quintic)},
                                   {"klein-quartic", parse_poly(fixtures::klein_quartic)},
                                   {"random-quintic", random_smooth_form(2, 5, seed)},
                                   {"k3-quartic", parse_poly(fixtures::k3_quartic)}};
    std::vector<HodgeFacts> facts;
    for (const auto& fx : smooth) facts.push_back(hodge_facts(fx.f));

    for (std::size_t i = 0; i < 3; ++i) {
        const int d = smooth[i].f.degree();
        const std::size_t g = genus(d);
        out.push_back(hodge_expectation(smooth[i].f, "01/plane-curve/d=" + std::to_string(d), smooth[i].label,
                                        facts[i], {g, g}, "genus (d-1)(d-2)/2 of a plane curve"));
    }
    for (std::size_t i = 0; i < smooth.size(); ++i) {
        Check c{"02/jacobian-two-path/" + smooth[i].label, hodge_inputs(smooth[i].f, smooth[i].label),
                hodge_computed(facts[i]), {}, Verdict::Fail, ""};
        if (facts[i].smooth) {
            c.expected.push_back({"graded_dims", exact(facts[i].report.jacobian_dims), "Jacobian ring pieces"});
            c.verdict = verdict_of(facts[i].report.paths_agree());
        } else {
            c.note = "fixture is not smooth";
        }
        out.push_back(c);
    }
    out.push_back(pole_complex_check(smooth[0].f, smooth[0].label, 0));
    out.back().name = "02/" + out.back().name;
    out.push_back(hodge_expectation(smooth[5].f, "03/k3", smooth[5].label, facts[5], {1, 19, 1},
                                    "Hodge numbers of a K3 surface"));

    for (auto [n, d, k_max] : {std::tuple{1, 2, 4}, {1, 3, 4}, {2, 3, 3}, {2, 4, 3}}) {
        auto checks = charmod_suite(ProblemSpec(n, d), k_max);
        checks.resize(1);
        append(out, checks, "04");
    }

    {
        Check c{"05/goodness-grid", {{"n", "1..3"}, {"d", "2..4"}, {"k", "1..4"}}, {}, {}, Verdict::Info, ""};
        json failures = json::array();
        std::size_t tested = 0;
        for (int n = 1; n <= 3; ++n)
            for (int d = 2; d <= 4; ++d)
                for (int k = 1; k <= 4; ++k) {
                    if (k * d - n - 1 < 0) continue;
                    ++tested;
                    if (!goodness_surjectivity(ProblemSpec(n, d), k))
                        failures.push_back({{"n", exact_int(n)}, {"d", exact_int(d)}, {"k", exact_int(k)}});
                }
        c.computed = {{"tested", exact(std::uint64_t(tested))}, {"failures", failures}};
        c.expected.push_back({"failures", json::array(), "products of monomials span"});
        c.verdict = verdict_of(failures.empty());
        out.push_back(c);
    }

    for (int d : {3, 4}) {
        UniversalFamily fam(ProblemSpec(2, d));
        Check c = intermediate_check(fam, 4);
        c.name = "06/" + c.name;
        out.push_back(c);
    }

    {
        Check c{"07/lowest-level-grid", {{"n", "1..3"}, {"d", "2..4"}}, {}, {}, Verdict::Info, ""};
        json got = json::array(), want = json::array();
        bool ok = true;
        for (int n = 1; n <= 3; ++n)
            for (int d = 2; d <= 4; ++d) {
                const std::size_t v = fkM_sections_dim(ProblemSpec(n, d), 1);
                const std::uint64_t e = choose(d - 1, n) * choose(n + d, n);
                got.push_back({{"n", exact_int(n)}, {"d", exact_int(d)}, {"dim", exact(std::uint64_t(v))}});
                want.push_back({{"n", exact_int(n)}, {"d", exact_int(d)}, {"dim", exact(e)}});
                ok = ok && v == e;
            }
        c.computed = {{"fkM_sections_dim", got}};
        c.expected.push_back({"fkM_sections_dim", want, "binom(d-1,n) binom(n+d,n)"});
        c.verdict = verdict_of(ok);
        out.push_back(c);
    }

    for (auto [n, d] : {std::pair{1, 2}, {1, 3}, {2, 3}, {2, 4}}) {
        UniversalFamily fam(ProblemSpec(n, d));
        append(out, calculus_checks(fam, 2, trials, seed), "08");
    }

    {
        Check c{"09/bott", {{"n", "1..3"}, {"p", "0..n"}, {"m", "-1..8"}}, {}, {}, Verdict::Info, ""};
        json mismatches = json::array();
        std::size_t tested = 0;
        for (int n = 1; n <= 3; ++n)
            for (int p = 0; p <= n; ++p)
                for (int m = -1; m <= 8; ++m) {
                    ++tested;
                    const std::uint64_t built = twisted_form_basis(n, p, m).dim();
                    const std::uint64_t closed = bott_h(n, p, 0, m);
                    if (built != closed)
                        mismatches.push_back({{"n", exact_int(n)}, {"p", exact_int(p)}, {"m", exact_int(m)},
                                              {"basis", exact(built)}, {"bott", exact(closed)}});
                }
        c.computed = {{"tested", exact(std::uint64_t(tested))}, {"mismatches", mismatches}};
        c.expected.push_back({"mismatches", json::array(), "Bott formula"});
        c.verdict = verdict_of(mismatches.empty());
        out.push_back(c);
    }

    out.push_back(strata_check(ProblemSpec(2, 4), StrataMode::nodes(1), 5, seed));
    out.push_back(strata_check(ProblemSpec(2, 4), StrataMode::nodes(2), 5, seed + 1));
    out.push_back(strata_check(ProblemSpec(2, 5), StrataMode::multiplicity(3), 5, seed + 2));
    for (std::size_t i = out.size() - 3; i < out.size(); ++i) {
        out[i].name = "10/" + out[i].name;
        if (out[i].verdict == Verdict::Info) out[i].verdict = Verdict::Fail;
    }
    {
        std::uint64_t state = seed;
        const JetSpec generic{2, 4, 1, random_points(2, 3, state)};
        const JetSpec collinear{2, 2, 1, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}};
        const bool g = jet_separation_check(generic);
        const bool l = jet_separation_check(collinear);
        Check c{"10/jet-separation", {{"generic_points", points_json(generic.points)},
                                      {"collinear_points", points_json(collinear.points)}},
                {{"generic_n2_d4_r1", g}, {"collinear_n2_d2_r1", l}}, {}, verdict_of(g && !l), ""};
        c.expected.push_back({"generic_n2_d4_r1", true, "9 conditions on quartics at general points"});
        c.expected.push_back({"collinear_n2_d2_r1", false, "a conic singular at 3 collinear points contains the line"});
        out.push_back(c);
    }

    {
        struct Case {
            std::string label;
            const char* text;
            std::size_t tau;
            std::optional<bool> surjective;
            std::string provenance;
        };
        const std::vector<Case> cases = {
            {"nodal-cubic", fixtures::nodal_cubic, 1, true, "one ordinary node"},
            {"nodal-quartic", fixtures::nodal_quartic, 1, true, "one ordinary node"},
            {"cuspidal-cubic", fixtures::cuspidal_cubic, 2, std::nullopt, "one ordinary cusp"},
            {"trinodal-quartic", fixtures::trinodal_quartic, 3, true, "frozen from an earlier exact run"},
        };
        for (const auto& cs : cases) {
            const HomogPoly f = parse_poly(cs.text);
            const TjurinaResult tj = tjurina_total(f);
            Check c{"11/fiber-surjectivity/" + cs.label, hodge_inputs(f, cs.label), {}, {}, Verdict::Info, ""};
            c.inputs["k"] = "1";
            c.computed["tjurina"] = tj.tau ? json(std::to_string(*tj.tau)) : json("non-isolated");
            c.computed["scanned_dims"] = exact(tj.scanned_dims);
            c.expected.push_back({"tjurina", exact(std::uint64_t(cs.tau)), cs.provenance});
            bool ok = tj.tau == cs.tau;
            if (cs.surjective) {
                const bool s = fiber_surjectivity_check(f, 1);
                c.computed["surjective"] = s;
                c.expected.push_back({"surjective", *cs.surjective, cs.provenance});
                ok = ok && s == *cs.surjective;
            }
            c.verdict = verdict_of(ok);
            out.push_back(c);
        }
        const HomogPoly bad = parse_poly(fixtures::double_line_cubic);
        Check c{"11/non-isolated", hodge_inputs(bad, "double-line-cubic"), {}, {}, Verdict::Fail, ""};
        try {
            fiber_surjectivity_check(bad, 1);
            c.computed["error"] = nullptr;
        } catch (const std::invalid_argument& e) {
            c.computed["error"] = e.what();
            c.verdict = verdict_of(std::string(e.what()) == "positive-dimensional singular locus");
        }
        c.expected.push_back({"error", "positive-dimensional singular locus", "singular along a line"});
        out.push_back(c);
    }

    {
        // The seeded parts of the grid, recomputed and serialized twice.
        auto seeded = [&] {
            json a = json::array();
            std::vector<Check> part;
            part.push_back(strata_check(ProblemSpec(2, 4), StrataMode::nodes(2), 5, seed + 1));
            for (auto& c : calculus_checks(UniversalFamily(ProblemSpec(2, 3)), 1, trials, seed)) part.push_back(c);
            ReportEnvelope env{tool_version, RunConfig{}, "", part};
            return machine_record(env);
        };
        const std::string first = seeded();
        const std::string second = seeded();
        Check c{"12/determinism", {{"seed", exact(seed)}}, {{"identical", first == second}}, {}, verdict_of(first == second), ""};
        c.expected.push_back({"identical", true, "seeded generators, ordered merges"});
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dispatch and reports

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

HomogPoly config_poly(const RunConfig& cfg) {
    std::string text;
    if (cfg.poly) {
        text = *cfg.poly;
    } else if (cfg.poly_file) {
        std::ifstream in(*cfg.poly_file);
        if (!in) throw UsageError("cannot read polynomial file " + *cfg.poly_file);
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else {
        throw UsageError(cfg.command + " requires --poly or --poly-file");
    }
    try {
        HomogPoly f = parse_poly(text, cfg.n ? *cfg.n + 1 : -1);
        if (cfg.d && f.degree() != *cfg.d)
            throw UsageError("polynomial has degree " + std::to_string(f.degree()) + " but --d is " +
                             std::to_string(*cfg.d));
        if (f.n_vars() < 2) throw UsageError("polynomial needs at least two variables");
        if (f.degree() < 2) throw UsageError("polynomial degree must be at least 2");
        return f;
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

ProblemSpec config_family(const RunConfig& cfg) {
    if (!cfg.n || !cfg.d) throw UsageError(cfg.command + " requires --n and --d");
    return ProblemSpec(*cfg.n, *cfg.d);
}

void enforce_cap(const RunConfig& cfg, const ProblemSpec& spec) {
    const std::uint64_t size = family_size(spec.n, spec.d, cfg.k_max);
    if (size > family_size_cap && !cfg.override_size_cap)
        throw UsageError("family n=" + std::to_string(spec.n) + ", d=" + std::to_string(spec.d) + ", kmax=" +
                         std::to_string(cfg.k_max) + " needs " + std::to_string(size) +
                         " coefficients per piece (cap " + std::to_string(family_size_cap) +
                         "); pass --override-size-cap to run it");
}

json config_json(const RunConfig& cfg) {
    auto opt_int = [](const std::optional<int>& v) { return v ? json(std::to_string(*v)) : json(nullptr); };
    auto opt_str = [](const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); };
    return {{"command", cfg.command},
            {"n", opt_int(cfg.n)},
            {"d", opt_int(cfg.d)},
            {"k_max", std::to_string(cfg.k_max)},
            {"poly", opt_str(cfg.poly)},
            {"poly_file", opt_str(cfg.poly_file)},
            {"trials", std::to_string(cfg.trials)},
            {"seed", std::to_string(cfg.seed)},
            {"override_size_cap", cfg.override_size_cap}};
}

}  // namespace

ReportEnvelope run_command(const RunConfig& cfg) {
    cfg.validate();
    ReportEnvelope env{tool_version, cfg, utc_timestamp(), {}};
    const std::string& cmd = cfg.command;
    if (cmd == "hodge") {
        const HomogPoly f = config_poly(cfg);
        env.checks = hodge_suite(f, "input");
    } else if (cmd == "charmod") {
        const ProblemSpec spec = config_family(cfg);
        enforce_cap(cfg, spec);
        env.checks = charmod_suite(spec, cfg.k_max);
    } else if (cmd == "universal") {
        const ProblemSpec spec = config_family(cfg);
        enforce_cap(cfg, spec);
        env.checks = universal_suite(spec, cfg.k_max, cfg.trials, cfg.seed);
    } else if (cmd == "strata") {
        env.checks = strata_suite(config_family(cfg), cfg.trials, cfg.seed);
    } else if (cmd == "verify-all") {
        if (cfg.n || cfg.d) {
            const ProblemSpec spec = config_family(cfg);
            enforce_cap(cfg, spec);
            std::vector<Check> all;
            HomogPoly fermat(spec.n + 1, spec.d);
            for (int i = 0; i <= spec.n; ++i) {
                Exponent e(spec.n + 1, 0);
                e[i] = spec.d;
                fermat.add_term(e, 1);
            }
            for (auto& c : hodge_suite(fermat, "fermat")) all.push_back(std::move(c));
            for (auto& c : charmod_suite(spec, cfg.k_max)) all.push_back(std::move(c));
            for (auto& c : universal_suite(spec, cfg.k_max, cfg.trials, cfg.seed)) all.push_back(std::move(c));
            for (auto& c : strata_suite(spec, std::min(cfg.trials, 5), cfg.seed)) all.push_back(std::move(c));
            env.checks = std::move(all);
        } else {
            env.checks = acceptance_suite(cfg.trials, cfg.seed);
        }
    } else {
        throw UsageError("unknown command '" + cmd + "'");
    }
    return env;
}

std::string machine_record(const ReportEnvelope& env) {
    json checks = json::array();
    std::size_t failed = 0;
    for (const auto& c : env.checks) {
        json expected = json::array();
        for (const auto& e : c.expected) expected.push_back({{"key", e.key}, {"value", e.value}, {"provenance", e.provenance}});
        checks.push_back({{"name", c.name},
                          {"inputs", c.inputs},
                          {"computed", c.computed},
                          {"expected", expected},
                          {"verdict", to_string(c.verdict)},
                          {"note", c.note}});
        if (c.verdict == Verdict::Fail) ++failed;
    }
    const json record = {{"tool_version", env.tool_version},
                         {"config", config_json(env.config)},
                         {"checks", checks},
                         {"summary",
                          {{"checks", std::to_string(env.checks.size())},
                           {"failed", std::to_string(failed)},
                           {"verdict", failed ? "fail" : "pass"}}}};
    return record.dump(2) + "\n";
}

std::string human_report(const ReportEnvelope& env) {
    std::ostringstream os;
    os << "residue " << env.tool_version << "  " << env.config.command << "  " << env.timestamp << "\n";
    if (!env.config.out.empty()) os << "record: " << env.config.out << "\n";
    std::size_t failed = 0;
    for (const auto& c : env.checks) {
        std::string tag = to_string(c.verdict);
        for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        os << "[" << tag << "] " << c.name;
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
        for (const auto& [k, v] : c.computed.items()) {
            const std::string text = v.dump();
            if (text.size() <= 120) os << "    " << k << " = " << text << "\n";
        }
        for (const auto& e : c.expected) {
            const std::string text = e.value.dump();
            if (text.size() <= 120) os << "    expected " << e.key << " = " << text << "  [" << e.provenance << "]\n";
        }
        if (c.verdict == Verdict::Fail) ++failed;
    }
    os << env.checks.size() << " checks, " << failed << " failed\n";
    return os.str();
}

void emit_report(const ReportEnvelope& env, const std::string& path) {
    auto write = [](const std::string& where, const std::string& text) {
        std::ofstream out(where, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + where + " for writing");
        out << text;
        out.flush();
        if (!out) throw std::runtime_error("write to " + where + " failed");
    };
    write(path, machine_record(env));
    write(path + ".txt", human_report(env));
}

}  // namespace residue
