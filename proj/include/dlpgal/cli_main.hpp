#pragma once

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "dlpgal/driver.hpp"

namespace dlpgal::cli {

/// Parse and dispatch one invocation. Exit codes: 0 success, 2 usage error,
/// 3 numerical singularity, 1 unexpected failure.
inline int run(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"Spline Galerkin solver for the double layer potential equation on corner contours"};
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_option("--curve", cfg.curve, "ellipse|pacman|battleax|l1|l2|l4");
        cmd->add_option("--a", cfg.a, "ellipse semi-axis a (default 3)");
        cmd->add_option("--b", cfg.b, "ellipse semi-axis b (default 4)");
        cmd->add_option("--theta", cfg.theta_over_pi, "model-curve opening angle, units of pi");
        cmd->add_option("--rhs", cfg.rhs, "f1|f2|f3");
        cmd->add_option("--degree", cfg.degree, "spline degree 0|1|2");
        cmd->add_option("--n", cfg.n, "spline resolution");
        cmd->add_option("--n-list", cfg.n_list, "resolutions for converge")->delimiter(',');
        cmd->add_option("--panels", cfg.panels, "composite panels m (default 40)");
        cmd->add_option("--points", cfg.points, "Gauss points r (default 24)");
        cmd->add_option("--theta-start", cfg.theta_start, "scan grid start, units of pi");
        cmd->add_option("--theta-end", cfg.theta_end, "scan grid end, units of pi");
        cmd->add_option("--theta-step", cfg.theta_step, "scan grid step, units of pi");
        cmd->add_option("--sections", cfg.sections, "finite-section sizes for local")->delimiter(',');
        cmd->add_option("--out", cfg.out, "output CSV path (default stdout)");
        cmd->add_option("--threads", cfg.threads, "worker cap, 0 = hardware");
        cmd->add_flag("--refine", cfg.refine, "refine suspicious scan angles at 0.001 pi, n doubled");
        cmd->add_flag("--outer-per-span", cfg.outer_per_span,
                      "outer rule per knot span instead of per basis support");
    };
    add_common(app.add_subcommand("solve", "solve one problem and tabulate the solution"));
    add_common(app.add_subcommand("converge", "tabulate E_n over an n list"));
    add_common(app.add_subcommand("scan", "condition numbers over an opening-angle grid"));
    add_common(app.add_subcommand("local", "finite sections of the corner operators"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (cfg.command == "solve") {
            double cond = 0.0;
            const std::string csv = run_solve(cfg, &cond);
            write_output(cfg, csv);
            std::cerr << "condition number = " << detail::fmt(cond) << "\n";
        } else if (cfg.command == "converge") {
            write_output(cfg, run_converge(cfg));
        } else if (cfg.command == "scan") {
            write_output(cfg, run_scan(cfg));
        } else {
            write_output(cfg, run_local(cfg));
        }
    } catch (const singular_system_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace dlpgal::cli
