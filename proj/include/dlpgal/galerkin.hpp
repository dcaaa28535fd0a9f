#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dlpgal/curves.hpp"
#include "dlpgal/dlp_operator.hpp"
#include "dlpgal/parallel.hpp"
#include "dlpgal/quadrature.hpp"
#include "dlpgal/splines.hpp"

namespace dlpgal {

/// Thrown when the assembled system is numerically singular; for the corner
/// scans this is the instability signal, not a programming error.
struct singular_system_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using BoundaryFn = std::function<cplx(cplx)>;

struct AssemblyOptions {
    int panels = 40;   // composite panels m (must be a multiple of q)
    int points = 24;   // Gauss points r, outer and per panel
    int threads = 0;   // 0 = hardware concurrency
    double delta = 2e-6;
    bool outer_per_subinterval = false;  // 24-point rule per knot span instead of per support
};

struct GalerkinSystem {
    Eigen::MatrixXcd matrix;
    Eigen::VectorXcd rhs;
    SplineBasis basis;
    Contour contour;
    AssemblyOptions options;
};

struct GalerkinSolution {
    Eigen::VectorXcd coeff;  // ordered like basis.indices()
    SplineBasis basis;
    Contour contour;
};

namespace detail {

// Outer quadrature nodes/weights for the support of basis function j.
inline ScaledRule outer_rule(const GaussRule& base, const SplineBasis& basis, int j,
                             bool per_subinterval) {
    const double lo = basis.support_lo(j);
    if (!per_subinterval || basis.degree() == 0) return scaled_rule(base, lo, basis.support_hi(j));
    const int n = basis.resolution();
    ScaledRule out;
    for (int t = 0; t <= basis.degree(); ++t) {
        ScaledRule piece = scaled_rule(base, lo + static_cast<double>(t) / n,
                                       lo + static_cast<double>(t + 1) / n);
        out.nodes.insert(out.nodes.end(), piece.nodes.begin(), piece.nodes.end());
        out.weights.insert(out.weights.end(), piece.weights.begin(), piece.weights.end());
    }
    return out;
}

}  // namespace detail

/// Assemble the Galerkin system for (I + V) omega = f in the corner-avoiding
/// spline space: entry (j,k) is the 24-point Gauss approximation over the
/// support of basis function j of (phi_k + V phi_k) phi_j, with V applied by
/// the composite panel rule; rhs entry j integrates f(g(s)) phi_j(s).
inline GalerkinSystem assemble(const Contour& contour, int d, int n, const BoundaryFn& f,
                               const AssemblyOptions& options = {}) {
    const int q = contour.corners();
    if (options.panels % q != 0)
        throw std::invalid_argument("assemble: panel count must be a multiple of the corner count");
    SplineBasis basis(n, d, q);  // validates q | n and n >= d+1
    const int N = basis.size();
    if (N == 0) throw std::invalid_argument("assemble: empty corner-avoiding index set");
    if (n > 512 && options.panels < n / 8)
        std::fprintf(stderr,
                     "assemble: warning: n = %d with only %d composite panels; "
                     "panels >= n/8 keeps the inner quadrature resolved\n",
                     n, options.panels);

    const ContourSamples samples = ContourSamples::at_composite(contour, options.panels, options.points);
    const int ns = samples.size();

    // Per-column sparse data at the composite nodes: node range covering the
    // support, premultiplied by the composite weight.
    struct Column {
        int begin = 0;
        std::vector<double> wphi;  // w_i * phi_k(s_i)
    };
    std::vector<Column> columns(N);
    for (int kk = 0; kk < N; ++kk) {
        const int k = basis.indices()[kk];
        const auto lo = std::upper_bound(samples.s.begin(), samples.s.end(), basis.support_lo(k));
        const auto hi = std::lower_bound(samples.s.begin(), samples.s.end(), basis.support_hi(k));
        Column& col = columns[kk];
        col.begin = static_cast<int>(lo - samples.s.begin());
        col.wphi.resize(hi - lo);
        for (size_t i = 0; i < col.wphi.size(); ++i) {
            const int idx = col.begin + static_cast<int>(i);
            col.wphi[i] = samples.w[idx] * basis.eval_unchecked(k, samples.s[idx]);
        }
    }

    const GaussRule base = gauss_legendre(options.points);

    GalerkinSystem system{Eigen::MatrixXcd(N, N), Eigen::VectorXcd(N), basis, contour, options};
    parallel_for(N, options.threads, [&](int jj) {
        const int j = basis.indices()[jj];
        const ScaledRule outer = detail::outer_rule(base, basis, j, options.outer_per_subinterval);
        const int nt = outer.size();
        std::vector<double> krow(ns);
        std::vector<double> row(N, 0.0);
        cplx rhs_j(0.0);
        for (int a = 0; a < nt; ++a) {
            const double t = outer.nodes[a];
            const double phi_j = basis.eval_unchecked(j, t);
            const double wt_phi_j = outer.weights[a] * phi_j;
            kernel_row(contour, t, samples, options.delta, krow.data());
            rhs_j += wt_phi_j * f(contour.eval(t));
            for (int kk = 0; kk < N; ++kk) {
                const Column& col = columns[kk];
                double v = 0.0;
                for (size_t i = 0; i < col.wphi.size(); ++i) v += col.wphi[i] * krow[col.begin + i];
                const int k = basis.indices()[kk];
                if (std::abs(k - j) <= d) v += basis.eval_unchecked(k, t);
                row[kk] += wt_phi_j * v;
            }
        }
        for (int kk = 0; kk < N; ++kk) system.matrix(jj, kk) = row[kk];
        system.rhs(jj) = rhs_j;
    });
    if (!system.matrix.allFinite() || !system.rhs.allFinite())
        throw std::runtime_error("assemble: non-finite system entries");
    return system;
}

/// Dense solve by row-pivoted LU. Throws singular_system_error when a pivot
/// falls below 1e-14 * |M|_inf, and rejects solutions whose relative
/// residual exceeds 1e-10.
inline GalerkinSolution solve(const GalerkinSystem& system) {
    const Eigen::MatrixXcd& M = system.matrix;
    const double norm_inf = M.cwiseAbs().rowwise().sum().maxCoeff();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (!(min_pivot > 1e-14 * norm_inf))
        throw singular_system_error("solve: numerically singular Galerkin matrix");
    Eigen::VectorXcd a = lu.solve(system.rhs);
    const double residual = (M * a - system.rhs).cwiseAbs().maxCoeff();
    const double scale = norm_inf * a.cwiseAbs().maxCoeff() + system.rhs.cwiseAbs().maxCoeff();
    if (scale > 0.0 && residual > 1e-10 * scale)
        throw std::runtime_error("solve: residual check failed");
    return GalerkinSolution{std::move(a), system.basis, system.contour};
}

/// omega_n(s) = sum of a_j phi_{nj}(s) over the <= d+1 covering splines.
inline cplx evaluate_solution(const GalerkinSolution& sol, double s) {
    const SplineBasis& basis = sol.basis;
    const int n = basis.resolution();
    const double t = s - std::floor(s);
    const int hi = static_cast<int>(std::floor(n * t));
    cplx value(0.0);
    for (int j = std::max(0, hi - basis.degree()); j <= std::min(hi, n - basis.degree() - 1); ++j) {
        const int pos = basis.position(j);
        if (pos >= 0) value += sol.coeff(pos) * basis.eval_unchecked(j, t);
    }
    return value;
}

/// 2-norm condition number via full singular value decomposition.
inline double condition_number(const Eigen::MatrixXcd& matrix) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

inline double condition_number(const GalerkinSystem& system) {
    return condition_number(system.matrix);
}

/// Evaluation mesh avoiding the corners: on every arc the points
/// k/q + h0, k/q + h0 + h, ..., up to (k+1)/q - h0.
inline std::vector<double> solution_mesh(int q, double h0 = 1.0 / 128.0, double h = 1e-3) {
    if (q < 1 || !(h0 > 0.0) || !(h > 0.0)) throw std::invalid_argument("solution_mesh: bad parameters");
    std::vector<double> mesh;
    const double span = 1.0 / q - 2.0 * h0;
    const int per_arc = static_cast<int>(std::floor(span / h + 1e-12)) + 1;
    if (per_arc < 1) throw std::invalid_argument("solution_mesh: empty mesh");
    mesh.reserve(static_cast<size_t>(q) * per_arc);
    for (int k = 0; k < q; ++k) {
        const double start = static_cast<double>(k) / q + h0;
        for (int i = 0; i < per_arc; ++i) mesh.push_back(start + i * h);
    }
    return mesh;
}

/// E_n = ||omega_{2n} - omega_n||_2 / ||omega_{2n}||_2 in the unweighted
/// discrete l2 norm over the corner-avoiding mesh.
inline double convergence_metric(const Contour& contour, const BoundaryFn& f, int d, int n,
                                 double h0 = 1.0 / 128.0, double h = 1e-3,
                                 const AssemblyOptions& options = {}) {
    const GalerkinSolution sol_n = solve(assemble(contour, d, n, f, options));
    const GalerkinSolution sol_2n = solve(assemble(contour, d, 2 * n, f, options));
    const std::vector<double> mesh = solution_mesh(contour.corners(), h0, h);
    double num = 0.0, den = 0.0;
    for (double s : mesh) {
        const cplx w2 = evaluate_solution(sol_2n, s);
        const cplx w1 = evaluate_solution(sol_n, s);
        num += std::norm(w2 - w1);
        den += std::norm(w2);
    }
    if (den <= 0.0) throw std::runtime_error("convergence_metric: zero reference solution");
    return std::sqrt(num / den);
}

}  // namespace dlpgal
