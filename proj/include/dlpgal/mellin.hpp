#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dlpgal/parallel.hpp"
#include "dlpgal/quadrature.hpp"
#include "dlpgal/splines.hpp"

namespace dlpgal {

/// Mellin kernel of the corner-local double layer operator,
///   k_theta(u) = u sin(theta) / (2 pi |1 - u e^{i theta}|^2).
/// Vanishes identically at theta = pi; positive for theta < pi, negative
/// for theta > pi.
inline double k_theta(double theta, double u) {
    if (!(u > 0.0)) throw std::invalid_argument("k_theta: argument must be positive");
    return u * std::sin(theta) / (2.0 * M_PI * (1.0 - 2.0 * u * std::cos(theta) + u * u));
}

/// Gram matrix of the normalized degree-d splines on the half axis:
/// E_{jk} = nu_d^2 * integral of phi_d(s-j) phi_d(s-k). Banded Toeplitz
/// with bandwidth d; the unit diagonal comes from the normalization.
inline Eigen::MatrixXd gram_matrix(int d, int M) {
    if (M < 1) throw std::invalid_argument("gram_matrix: size must be >= 1");
    const double nu2 = nu(d) * nu(d);
    // band values by exact Gauss quadrature (piecewise degree 2d)
    std::vector<double> band(d + 1, 0.0);
    const GaussRule rule = gauss_legendre(d + 1);
    for (int off = 0; off <= d; ++off) {
        double sum = 0.0;
        for (int k = off; k <= d; ++k) {
            const ScaledRule sr = scaled_rule(rule, k, k + 1.0);
            for (int i = 0; i < sr.size(); ++i)
                sum += sr.weights[i] * bspline_eval(d, sr.nodes[i]) * bspline_eval(d, sr.nodes[i] - off);
        }
        band[off] = nu2 * sum;
    }
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(M, M);
    for (int j = 0; j < M; ++j)
        for (int k = std::max(0, j - d); k <= std::min(M - 1, j + d); ++k) E(j, k) = band[std::abs(j - k)];
    return E;
}

/// Galerkin matrix of the Mellin operator N_theta in the normalized n = 1
/// spline basis on the half axis:
///   B_{jk} = nu_d^2 * int int k_theta(sigma/s) phi_d(s-k) phi_d(sigma-j) ds/s dsigma,
/// every unit subinterval of the two supports integrated by an r-point
/// Gauss rule.
inline Eigen::MatrixXd n_theta_matrix(double theta, int d, int M, int r = 24, int threads = 0) {
    if (!(theta > 0.0) || !(theta < 2.0 * M_PI))
        throw std::invalid_argument("n_theta_matrix: theta must lie in (0, 2pi)");
    if (M < 1) throw std::invalid_argument("n_theta_matrix: size must be >= 1");
    const double nu2 = nu(d) * nu(d);
    const GaussRule base = gauss_legendre(r);
    // nodes and spline values on the reference cell [0,1]
    std::vector<double> x01(r), w01(r);
    for (int i = 0; i < r; ++i) {
        x01[i] = 0.5 * (1.0 + base.nodes[i]);
        w01[i] = 0.5 * base.weights[i];
    }
    // phi_d(p + x01[i]) for each unit piece p of the support
    std::vector<std::vector<double>> phi(d + 1, std::vector<double>(r));
    for (int p = 0; p <= d; ++p)
        for (int i = 0; i < r; ++i) phi[p][i] = bspline_eval(d, p + x01[i]);

    Eigen::MatrixXd B(M, M);
    parallel_for(M, threads, [&](int j) {
        for (int k = 0; k < M; ++k) {
            double total = 0.0;
            for (int ps = 0; ps <= d; ++ps) {        // piece of the s-support [k, k+d+1]
                for (int po = 0; po <= d; ++po) {    // piece of the sigma-support [j, j+d+1]
                    double cell = 0.0;
                    for (int i = 0; i < r; ++i) {
                        const double s = k + ps + x01[i];
                        double inner = 0.0;
                        for (int l = 0; l < r; ++l) {
                            const double sigma = j + po + x01[l];
                            inner += w01[l] * phi[po][l] * k_theta(theta, sigma / s);
                        }
                        cell += w01[i] * phi[ps][i] * inner / s;
                    }
                    total += cell;
                }
            }
            B(j, k) = nu2 * total;
        }
    });
    return B;
}

/// Truncated coefficient-space representation of the corner operator
/// R = [[I, X], [X, I]] on l2 x l2, where X is the leading N x N block of
/// E_M^{-1} B_M (the Galerkin compression of N_theta in the non-orthogonal
/// spline basis), built on the enlarged range M to absorb the Gram-inverse
/// truncation tail.
struct FiniteSection {
    double theta = 0.0;
    int d = 0;
    int N = 0;
    int M = 0;
    Eigen::MatrixXd block;  // X, N x N

    Eigen::MatrixXd assembled() const {
        Eigen::MatrixXd R(2 * N, 2 * N);
        R.topLeftCorner(N, N) = Eigen::MatrixXd::Identity(N, N);
        R.bottomRightCorner(N, N) = Eigen::MatrixXd::Identity(N, N);
        R.topRightCorner(N, N) = block;
        R.bottomLeftCorner(N, N) = block;
        return R;
    }
};

namespace detail {

inline Eigen::MatrixXd gram_solve_truncate(const Eigen::MatrixXd& E, const Eigen::MatrixXd& B, int N) {
    Eigen::LLT<Eigen::MatrixXd> llt(E);
    if (llt.info() != Eigen::Success)
        throw std::logic_error("finite_section: spline Gram matrix is not positive definite");
    return llt.solve(B).topLeftCorner(N, N);
}

}  // namespace detail

inline FiniteSection finite_section(double theta, int d, int N, int M, int r = 24, int threads = 0) {
    if (N < 1) throw std::invalid_argument("finite_section: section size must be >= 1");
    if (M < N + 2 * (d + 1))
        throw std::invalid_argument("finite_section: build size must be >= N + 2(d+1)");
    const Eigen::MatrixXd B = n_theta_matrix(theta, d, M, r, threads);
    const Eigen::MatrixXd E = gram_matrix(d, M);
    return FiniteSection{theta, d, N, M, detail::gram_solve_truncate(E, B, N)};
}

struct SectionConditioning {
    int size = 0;       // N
    double cond = 0.0;  // 2-norm condition number of R_N
    double sigma_min = 0.0;
};

/// Condition number and smallest singular value of R_N for each requested
/// section size. R_N is orthogonally similar to diag(I + X, I - X), so its
/// singular values are computed from the two N x N blocks.
inline std::vector<SectionConditioning> section_conditioning(double theta, int d,
                                                             const std::vector<int>& sizes,
                                                             int r = 24, int threads = 0) {
    if (sizes.empty()) throw std::invalid_argument("section_conditioning: no section sizes");
    for (size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw std::invalid_argument("section_conditioning: sizes must be increasing");
    const int margin = 2 * (d + 1);
    const int M_max = sizes.back() + margin;
    const Eigen::MatrixXd B_max = n_theta_matrix(theta, d, M_max, r, threads);
    std::vector<SectionConditioning> out(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) {
        const int N = sizes[i];
        const int M = N + margin;
        const Eigen::MatrixXd X =
            detail::gram_solve_truncate(gram_matrix(d, M), B_max.topLeftCorner(M, M), N);
        const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(N, N);
        Eigen::BDCSVD<Eigen::MatrixXd> plus(I + X);
        Eigen::BDCSVD<Eigen::MatrixXd> minus(I - X);
        const double smax = std::max(plus.singularValues()(0), minus.singularValues()(0));
        const double smin =
            std::min(plus.singularValues()(N - 1), minus.singularValues()(N - 1));
        out[i] = SectionConditioning{N, smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity(),
                                     smin};
    }
    return out;
}

}  // namespace dlpgal
