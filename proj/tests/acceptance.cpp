// One line per acceptance item; exit status 1 if any item fails.
// Usage: acceptance <path-to-residue-executable> <scratch-dir>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "residue/cli.hpp"
#include "residue/fixtures.hpp"
#include "residue/griffiths.hpp"
#include "residue/poly_text.hpp"
#include "residue/strata.hpp"
#include "residue/universal.hpp"

using namespace residue;

namespace {

int failures = 0;

void item(int number, const std::string& title, const std::function<bool(std::ostream&)>& body) {
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << number << ". " << title;
    if (!detail.str().empty()) std::cout << "  [" << detail.str() << "]";
    std::cout << std::endl;
}

std::string dims(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <residue-executable> <scratch-dir>\n";
        return 2;
    }
    const std::string exe = argv[1];
    const std::string scratch = argv[2];

    item(1, "plane curves d=3,4,5: graded vanishing Hodge numbers and 2g", [](std::ostream& os) {
        bool ok = true;
        for (const char* text : {fixtures::fermat_cubic, fixtures::fermat_quartic, fixtures::fermat_quintic}) {
            const HomogPoly f = parse_poly(text);
            const int d = f.degree();
            const std::size_t g = (d - 1) * (d - 2) / 2;
            const HodgeReport r = vanishing_hodge_numbers(f);
            os << "d=" << d << ":" << dims(r.graded_dims) << " total " << r.total << "; ";
            ok = ok && r.graded_dims == std::vector<std::size_t>{g, g} && r.total == 2 * g;
        }
        return ok;
    });

    item(2, "form calculus equals Jacobian ring on smooth fixtures", [](std::ostream& os) {
        const std::vector<HomogPoly> smooth = {parse_poly(fixtures::fermat_cubic),   parse_poly(fixtures::fermat_quartic),
                                               parse_poly(fixtures::fermat_quintic), parse_poly(fixtures::klein_quartic),
                                               parse_poly(fixtures::k3_quartic),     random_smooth_form(2, 5, 1)};
        std::size_t agree = 0;
        for (const auto& f : smooth) agree += jacobian_ring_check(f) ? 1 : 0;
        os << agree << "/" << smooth.size() << " fixtures agree";
        return agree == smooth.size();
    });

    item(3, "quartic K3 surface: (1,19,1), total 21", [](std::ostream& os) {
        const HodgeReport r = vanishing_hodge_numbers(parse_poly(fixtures::k3_quartic));
        os << dims(r.graded_dims) << " total " << r.total;
        return r.graded_dims == std::vector<std::size_t>{1, 19, 1} && r.total == 21;
    });

    item(4, "characteristic module equals universal Jacobian ring (n=1 closed form)", [](std::ostream& os) {
        bool ok = true;
        for (auto [n, d, k_max] : {std::tuple{1, 2, 4}, {1, 3, 4}, {2, 3, 3}, {2, 4, 3}}) {
            const CharModuleTable t = char_module_table(ProblemSpec(n, d), 1, k_max);
            std::vector<std::size_t> c;
            for (const auto& r : t.rows) {
                c.push_back(r.dim_C);
                if (r.k >= 2 && !r.agree) ok = false;
                if (n == 1 && (r.dim_C != rational_normal_curve_piece(d, r.k) || r.dim_UJR != r.dim_C)) ok = false;
            }
            os << "n=" << n << ",d=" << d << ":" << dims(c) << " onset " << (t.onset ? std::to_string(*t.onset) : "-")
               << "; ";
        }
        return ok;
    });

    item(5, "goodness: S_d x S_{kd-n-1} -> S_{(k+1)d-n-1} onto, n<=3, d<=4, k<=4", [](std::ostream& os) {
        std::size_t tested = 0, bad = 0;
        for (int n = 1; n <= 3; ++n)
            for (int d = 2; d <= 4; ++d)
                for (int k = 1; k <= 4; ++k)
                    if (k * d - n - 1 >= 0) {
                        ++tested;
                        if (!goodness_surjectivity(ProblemSpec(n, d), k)) ++bad;
                    }
        os << tested << " cases, " << bad << " failures";
        return bad == 0;
    });

    item(6, "intermediate cohomology matches the 0/1 bookkeeping, n=2, d=3,4, k=1..4", [](std::ostream& os) {
        bool ok = true;
        for (int d : {3, 4}) {
            UniversalFamily fam(ProblemSpec(2, d));
            os << "d=" << d << ":";
            for (int k = 1; k <= 4; ++k)
                for (int i = -2; i <= -1; ++i) {
                    const std::size_t h = fam.intermediate_cohomology(k, i);
                    os << h;
                    ok = ok && h == hodge_bookkeeping(2, k, i);
                }
            os << " ";
        }
        return ok;
    });

    item(7, "lowest level: fkM_sections_dim(1) = binom(d-1,n) binom(n+d,n), n<=3, d<=4", [](std::ostream& os) {
        bool ok = true;
        for (int n = 1; n <= 3; ++n)
            for (int d = 2; d <= 4; ++d) {
                const std::size_t v = fkM_sections_dim(ProblemSpec(n, d), 1);
                ok = ok && v == binomial(d - 1, n) * binomial(n + d, n);
                os << v << " ";
            }
        return ok;
    });

    item(8, "d^2 = 0 and Euler closure, 100 random trials each", [](std::ostream& os) {
        std::size_t bad = 0, runs = 0;
        for (auto [n, d] : {std::pair{1, 2}, {1, 3}, {2, 3}, {2, 4}}) {
            UniversalFamily fam(ProblemSpec(n, d));
            for (int k = 1; k <= 2; ++k) {
                for (int p = 0; p + 2 <= n; ++p, ++runs) bad += fam.count_nonzero_d_squared(k, p, 100, 17 * k + p);
                for (int p = 0; p < n; ++p, ++runs) bad += fam.count_euler_violations(k, p, 100, 31 * k + p);
            }
            // exterior_d on assembled rational forms
            const BigradedPoly& F = fam.hypersurface().F;
            for (int p = 0; p < n; ++p, ++runs) {
                const WSpace w = fam.w_space(1, p);
                for (int t = 0; t < 100; ++t) {
                    const auto& eta = w.basis.elements[(7 * t + p) % w.dim()];
                    const RationalFormRep once = exterior_d({w.basis.ambient.form(eta), 1, F});
                    if (!euler_contract(once.numerator).is_zero()) ++bad;
                    if (!exterior_d(once).numerator.is_zero()) ++bad;
                }
            }
        }
        os << runs << " runs, " << bad << " failures";
        return bad == 0;
    });

    item(9, "twisted form bases match Bott, n<=3, p<=n, m<=8", [](std::ostream& os) {
        std::size_t tested = 0, bad = 0;
        for (int n = 1; n <= 3; ++n)
            for (int p = 0; p <= n; ++p)
                for (int m = -1; m <= 8; ++m, ++tested)
                    if (twisted_form_basis(n, p, m).dim() != bott_h(n, p, 0, m)) ++bad;
        os << tested << " cases, " << bad << " mismatches";
        return bad == 0;
    });

    item(10, "strata bounds and jet separation verdicts", [](std::ostream& os) {
        const auto n1 = stratum_codim_estimate(ProblemSpec(2, 4), StrataMode::nodes(1), 5, 1);
        const auto n2 = stratum_codim_estimate(ProblemSpec(2, 4), StrataMode::nodes(2), 5, 2);
        const auto r3 = stratum_codim_estimate(ProblemSpec(2, 5), StrataMode::multiplicity(3), 5, 3);
        std::uint64_t state = 4;
        const bool generic = jet_separation_check({2, 4, 1, random_points(2, 3, state)});
        const bool collinear = jet_separation_check({2, 2, 1, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}});
        os << "N=1 codim " << n1.observed_codim << ", N=2 codim " << n2.observed_codim << ", r=3 codim "
           << r3.observed_codim << ", generic " << generic << ", collinear " << collinear;
        return n1.pass && n2.pass && r3.pass && generic && !collinear;
    });

    item(11, "fiber surjectivity at k=1 and Tjurina numbers", [](std::ostream& os) {
        const HomogPoly cubic = parse_poly(fixtures::nodal_cubic);
        const HomogPoly quartic = parse_poly(fixtures::nodal_quartic);
        const HomogPoly cusp = parse_poly(fixtures::cuspidal_cubic);
        const auto t1 = tjurina_total(cubic).tau, t2 = tjurina_total(quartic).tau, t3 = tjurina_total(cusp).tau;
        const bool s1 = fiber_surjectivity_check(cubic, 1), s2 = fiber_surjectivity_check(quartic, 1);
        os << "tau " << t1.value_or(0) << "," << t2.value_or(0) << "," << t3.value_or(0) << "; surjective " << s1 << ","
           << s2;
        return s1 && s2 && t1 == 1u && t2 == 1u && t3 == 2u;
    });

    item(12, "two verify-all runs with one seed give byte-identical records", [&](std::ostream& os) {
        const std::string a = scratch + "/verify_a.json", b = scratch + "/verify_b.json";
        for (const auto& out : {a, b}) {
            const std::string cmd = "\"" + exe + "\" verify-all --seed 5 --out \"" + out + "\" > /dev/null";
            const int status = std::system(cmd.c_str());
            if (status != 0) {
                os << "verify-all exited with status " << status;
                return false;
            }
        }
        const std::string ra = slurp(a), rb = slurp(b);
        os << ra.size() << " bytes, " << (ra == rb ? "identical" : "different");
        return !ra.empty() && ra == rb;
    });

    std::cout << (failures ? "FAILED: " + std::to_string(failures) + " item(s)" : "all items pass") << std::endl;
    return failures ? 1 : 0;
}
