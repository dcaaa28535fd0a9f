#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dlpgal/curves.hpp"
#include "dlpgal/galerkin.hpp"
#include "dlpgal/mellin.hpp"
#include "dlpgal/parallel.hpp"
#include "dlpgal/problems.hpp"

namespace dlpgal::cli {

struct RunConfig {
    std::string command;  // solve | converge | scan | local
    std::string curve = "pacman";
    double a = 3.0;
    double b = 4.0;
    double theta_over_pi = 0.5;  // model-curve opening angle, units of pi
    std::string rhs = "f1";
    int degree = 0;
    int n = 128;
    std::vector<int> n_list;
    int panels = 40;
    int points = 24;
    double theta_start = 0.1;  // scan grid, units of pi
    double theta_end = 1.9;
    double theta_step = 0.01;
    std::vector<int> sections = {64, 128, 256};
    std::string out;  // empty = stdout
    int threads = 0;
    bool refine = false;
    double refine_threshold = 1e3;  // condition number that marks an angle suspicious
    bool outer_per_span = false;    // one outer rule per knot span instead of per support
};

inline AssemblyOptions assembly_options(const RunConfig& cfg, int threads) {
    AssemblyOptions options;
    options.panels = cfg.panels;
    options.points = cfg.points;
    options.threads = threads;
    options.outer_per_subinterval = cfg.outer_per_span;
    return options;
}

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline bool model_curve(const std::string& name) {
    return name == "l1" || name == "l2" || name == "l4";
}

inline std::vector<double> theta_grid(double start, double end, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("theta step must be positive");
    if (!(start <= end)) throw std::invalid_argument("theta range is empty");
    const int count = static_cast<int>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) grid[i] = start + i * step;
    return grid;
}

}  // namespace detail

inline Contour build_curve(const RunConfig& cfg) {
    if (cfg.curve == "ellipse") return make_ellipse(cfg.a, cfg.b);
    if (cfg.curve == "pacman") return make_pacman(cfg.a, cfg.b);
    if (cfg.curve == "battleax") return make_battleax(cfg.a, cfg.b);
    const double theta = cfg.theta_over_pi * M_PI;
    if (cfg.curve == "l1") return make_l1(theta);
    if (cfg.curve == "l2") return make_l2(theta);
    if (cfg.curve == "l4") return make_l4(theta);
    throw std::invalid_argument("unknown curve '" + cfg.curve + "'");
}

inline RhsSpec build_rhs(const RunConfig& cfg) {
    RhsSpec spec;
    if (cfg.rhs == "f1")
        spec.kind = RhsKind::f1;
    else if (cfg.rhs == "f2")
        spec.kind = RhsKind::f2;
    else if (cfg.rhs == "f3")
        spec.kind = RhsKind::f3;
    else
        throw std::invalid_argument("unknown right-hand side '" + cfg.rhs + "'");
    spec.z0 = RhsSpec::reference_point(cfg.a, cfg.b);
    return spec;
}

inline void validate(const RunConfig& cfg) {
    if (!(cfg.a > 0.0) || !(cfg.b > 0.0)) throw std::invalid_argument("semi-axes must be positive");
    if (cfg.degree < 0 || cfg.degree > 2) throw std::invalid_argument("degree must be 0, 1 or 2");
    if (cfg.panels < 1 || cfg.points < 1) throw std::invalid_argument("panels/points must be >= 1");
    if (detail::model_curve(cfg.curve) && !(cfg.theta_over_pi > 0.0 && cfg.theta_over_pi < 2.0))
        throw std::invalid_argument("theta must lie in (0, 2) pi units");
    const int q = cfg.curve == "pacman" ? 2 : (cfg.curve == "battleax" || cfg.curve == "l4") ? 4
                  : cfg.curve == "l2"   ? 2
                                        : 1;
    auto check_n = [&](int n) {
        if (n < cfg.degree + 1) throw std::invalid_argument("n must be at least degree + 1");
        if (n % q != 0) throw std::invalid_argument("n must be divisible by the corner count");
    };
    if (cfg.command == "solve") check_n(cfg.n);
    if (cfg.command == "converge") {
        if (cfg.n_list.empty()) throw std::invalid_argument("converge needs a nonempty n list");
        for (int n : cfg.n_list) check_n(n);
    }
    if (cfg.panels % q != 0)
        throw std::invalid_argument("panel count must be divisible by the corner count");
    if (cfg.command == "scan" || cfg.command == "local") {
        if (!(cfg.theta_step > 0.0)) throw std::invalid_argument("theta step must be positive");
        if (!(cfg.theta_start > 0.0 && cfg.theta_end < 2.0 && cfg.theta_start <= cfg.theta_end))
            throw std::invalid_argument("theta grid must lie inside (0, 2) pi units");
    }
    if (cfg.command == "scan") {
        if (!detail::model_curve(cfg.curve))
            throw std::invalid_argument("scan requires one of the model curves l1, l2, l4");
        check_n(cfg.n);
    }
    if (cfg.command == "local") {
        if (cfg.sections.empty()) throw std::invalid_argument("local needs section sizes");
        for (size_t i = 0; i < cfg.sections.size(); ++i) {
            if (cfg.sections[i] < 1) throw std::invalid_argument("section sizes must be positive");
            if (i > 0 && cfg.sections[i] <= cfg.sections[i - 1])
                throw std::invalid_argument("section sizes must be increasing");
        }
    }
}

/// Solve on the configured curve and tabulate the solution over the
/// corner-avoiding mesh. Returns the CSV body; the system condition number
/// is reported through cond_out when requested.
inline std::string run_solve(const RunConfig& cfg, double* cond_out = nullptr) {
    validate(cfg);
    const Contour contour = build_curve(cfg);
    const BoundaryFn f = rhs_function(build_rhs(cfg));
    const GalerkinSystem system =
        assemble(contour, cfg.degree, cfg.n, f, assembly_options(cfg, cfg.threads));
    const GalerkinSolution sol = solve(system);
    if (cond_out) *cond_out = condition_number(system);
    std::ostringstream csv;
    csv << "s,re_omega,im_omega\n";
    for (double s : solution_mesh(contour.corners())) {
        const cplx w = evaluate_solution(sol, s);
        csv << detail::fmt(s) << ',' << detail::fmt(w.real()) << ',' << detail::fmt(w.imag()) << '\n';
    }
    return csv.str();
}

inline std::string run_converge(const RunConfig& cfg) {
    validate(cfg);
    const Contour contour = build_curve(cfg);
    const BoundaryFn f = rhs_function(build_rhs(cfg));
    const AssemblyOptions options = assembly_options(cfg, cfg.threads);
    std::ostringstream csv;
    csv << "n,E_n\n";
    for (int n : cfg.n_list) {
        const double e = convergence_metric(contour, f, cfg.degree, n, 1.0 / 128.0, 1e-3, options);
        csv << n << ',' << detail::fmt(e) << '\n';
    }
    return csv.str();
}

/// Condition numbers of the Galerkin systems on a model-curve family over a
/// grid of opening angles. With refine enabled, every angle whose condition
/// number exceeds 1e3 gets a second pass on a 0.001 pi grid around it with n
/// doubled.
inline std::string run_scan(const RunConfig& cfg) {
    validate(cfg);
    const BoundaryFn zero = [](cplx) { return cplx(0.0); };
    struct Row {
        double theta_over_pi;
        double cond;
    };
    auto scan_pass = [&](const std::vector<double>& grid, int n) {
        std::vector<Row> rows(grid.size());
        const AssemblyOptions options = assembly_options(cfg, 1);
        parallel_for(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
            RunConfig point = cfg;
            point.theta_over_pi = grid[i];
            const Contour contour = build_curve(point);
            const GalerkinSystem system = assemble(contour, cfg.degree, n, zero, options);
            rows[i] = Row{grid[i], condition_number(system)};
        });
        return rows;
    };
    std::vector<double> grid = detail::theta_grid(cfg.theta_start, cfg.theta_end, cfg.theta_step);
    std::vector<Row> rows = scan_pass(grid, cfg.n);
    if (cfg.refine) {
        std::vector<double> refined;
        for (const Row& row : rows) {
            if (!(row.cond > cfg.refine_threshold)) continue;
            for (double t = row.theta_over_pi - cfg.theta_step; t <= row.theta_over_pi + cfg.theta_step + 1e-12;
                 t += 0.001) {
                if (!(t > 0.0 && t < 2.0)) continue;
                const bool on_base = std::any_of(grid.begin(), grid.end(),
                                                 [t](double g) { return std::abs(g - t) < 1e-12; });
                if (!on_base) refined.push_back(t);
            }
        }
        std::sort(refined.begin(), refined.end());
        refined.erase(std::unique(refined.begin(), refined.end(),
                                  [](double x, double y) { return std::abs(x - y) < 1e-12; }),
                      refined.end());
        if (!refined.empty()) {
            std::vector<Row> extra = scan_pass(refined, 2 * cfg.n);
            rows.insert(rows.end(), extra.begin(), extra.end());
            std::stable_sort(rows.begin(), rows.end(),
                             [](const Row& x, const Row& y) { return x.theta_over_pi < y.theta_over_pi; });
        }
    }
    std::ostringstream csv;
    csv << "theta_over_pi,cond,log10_cond\n";
    for (const Row& row : rows)
        csv << detail::fmt(row.theta_over_pi) << ',' << detail::fmt(row.cond) << ','
            << detail::fmt(std::log10(row.cond)) << '\n';
    return csv.str();
}

/// Finite-section conditioning of the corner operators R_tau over the same
/// kind of angle grid.
inline std::string run_local(const RunConfig& cfg) {
    validate(cfg);
    const std::vector<double> grid = detail::theta_grid(cfg.theta_start, cfg.theta_end, cfg.theta_step);
    std::vector<std::vector<SectionConditioning>> results(grid.size());
    parallel_for(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
        results[i] = section_conditioning(grid[i] * M_PI, cfg.degree, cfg.sections, cfg.points, 1);
    });
    std::ostringstream csv;
    csv << "theta_over_pi,N,cond,sigma_min\n";
    for (size_t i = 0; i < grid.size(); ++i)
        for (const SectionConditioning& sc : results[i])
            csv << detail::fmt(grid[i]) << ',' << sc.size << ',' << detail::fmt(sc.cond) << ','
                << detail::fmt(sc.sigma_min) << '\n';
    return csv.str();
}

inline void write_output(const RunConfig& cfg, const std::string& csv) {
    if (cfg.out.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + cfg.out + "'");
    file << csv;
}

}  // namespace dlpgal::cli
