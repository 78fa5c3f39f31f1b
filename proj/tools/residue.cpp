#include <utility>
#include <iostream>

#include <CLI11.hpp>

#include "residue/cli.hpp"

int main(int argc, char** argv) {
    using residue::RunConfig;
    CLI::App app{"Exact residue-calculus and universal-family checks"};
    app.set_version_flag("--version", residue::tool_version);
    app.require_subcommand(1);

    RunConfig cfg;
    int n = 0, d = 0;
    std::string poly, poly_file;
    auto add_flags = [&](CLI::App* sub) {
        sub->add_option("--n", n, "dimension of the ambient projective space");
        sub->add_option("--d", d, "degree of the hypersurfaces");
        sub->add_option("--kmax", cfg.k_max, "largest pole order / a-degree");
        sub->add_option("--poly", poly, "expanded homogeneous polynomial in x0..xn");
        sub->add_option("--poly-file", poly_file, "file holding the polynomial");
        sub->add_option("--trials", cfg.trials, "randomized trials per check");
        sub->add_option("--seed", cfg.seed, "seed for all randomized checks");
        sub->add_option("--out", cfg.out, "write the JSON record here and the text report to <out>.txt");
        sub->add_flag("--override-size-cap", cfg.override_size_cap, "allow families above the size cap");
    };
    const std::pair<const char*, const char*> commands[] = {
        {"hodge", "Hodge filtration of a smooth hypersurface via pole orders"},
        {"charmod", "characteristic module pieces of one polynomial or a family"},
        {"universal", "universal family: form spaces, goodness, intermediate cohomology"},
        {"strata", "jet separation and stratum codimension estimates"},
        {"verify-all", "the default acceptance grid, or every suite for --n/--d"},
    };
    for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub->count("--n")) cfg.n = n;
    if (sub->count("--d")) cfg.d = d;
    if (sub->count("--poly")) cfg.poly = poly;
    if (sub->count("--poly-file")) cfg.poly_file = poly_file;

    try {
        const residue::ReportEnvelope env = residue::run_command(cfg);
        std::cout << residue::human_report(env);
        if (!cfg.out.empty()) residue::emit_report(env, cfg.out);
        return env.exit_code();
    } catch (const residue::UsageError& e) {
        std::cerr << "residue: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "residue: " << e.what() << "\n";
        return 1;
    }
}
