#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dlpgal/curves.hpp"
#include "dlpgal/quadrature.hpp"

namespace dlpgal {

/// Kernel and quadrature parameters for applying V and A = I + V.
struct KernelParams {
    explicit KernelParams(const Contour& c, double delta_ = 2e-6, int panels_ = 40, int points_ = 24)
        : contour(&c), delta(delta_), panels(panels_), points(points_) {
        if (!(delta > 0.0)) throw std::invalid_argument("KernelParams: delta must be positive");
        if (panels < 1 || points < 1) throw std::invalid_argument("KernelParams: panels/points must be >= 1");
        if (panels % c.corners() != 0)
            throw std::invalid_argument("KernelParams: panel count must be a multiple of the corner count");
    }

    const Contour* contour;
    double delta;
    int panels;  // m
    int points;  // r
};

namespace detail {

inline double wrap_distance(double s, double sigma) {
    double d = std::abs(s - sigma);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

inline double kernel_diagonal(const Contour& contour, double sigma) {
    const cplx g1 = contour.deriv1(sigma);
    if (g1 == cplx(0.0)) throw std::runtime_error("kernel: vanishing tangent on the diagonal");
    return std::imag(contour.deriv2(sigma) / g1) / (2.0 * M_PI);
}

}  // namespace detail

/// Double layer potential kernel in parametric form,
///   k_V(sigma, s) = Im(g'(s) / (g(s) - g(sigma))) / pi,
/// with the same-arc diagonal limit Im(g''(sigma)/g'(sigma)) / (2 pi)
/// substituted when |s - sigma| (mod 1) < delta.
inline double kernel(const Contour& contour, double sigma, double s, double delta = 2e-6) {
    const bool same_arc = contour.is_smooth() || contour.arc_index(s) == contour.arc_index(sigma);
    if (same_arc && detail::wrap_distance(s, sigma) < delta) return detail::kernel_diagonal(contour, sigma);
    const cplx diff = contour.eval(s) - contour.eval(sigma);
    if (diff == cplx(0.0)) throw std::runtime_error("kernel: contour points coincide away from the diagonal");
    return std::imag(contour.deriv1(s) / diff) / M_PI;
}

/// Contour data cached at the composite quadrature nodes; shared by the
/// repeated kernel-row evaluations during assembly.
struct ContourSamples {
    std::vector<double> s;
    std::vector<double> w;
    std::vector<cplx> pos;
    std::vector<cplx> vel;
    std::vector<int> arc;

    int size() const { return static_cast<int>(s.size()); }

    static ContourSamples at_composite(const Contour& contour, int m, int r) {
        CompositeRule rule = composite_rule(m, r);
        ContourSamples out;
        out.s = std::move(rule.nodes);
        out.w = std::move(rule.weights);
        const int n = out.size();
        out.pos.resize(n);
        out.vel.resize(n);
        out.arc.resize(n);
        for (int i = 0; i < n; ++i) {
            out.pos[i] = contour.eval(out.s[i]);
            out.vel[i] = contour.deriv1(out.s[i]);
            out.arc[i] = contour.arc_index(out.s[i]);
        }
        return out;
    }
};

/// k_V(sigma, s_i) against every cached node, written into out[0..size).
inline void kernel_row(const Contour& contour, double sigma, const ContourSamples& samples,
                       double delta, double* out) {
    const cplx gs = contour.eval(sigma);
    const int arc_sigma = contour.arc_index(sigma);
    const bool smooth = contour.is_smooth();
    const int n = samples.size();
    for (int i = 0; i < n; ++i) {
        const bool same_arc = smooth || samples.arc[i] == arc_sigma;
        if (same_arc && detail::wrap_distance(samples.s[i], sigma) < delta) {
            out[i] = detail::kernel_diagonal(contour, sigma);
            continue;
        }
        const cplx diff = samples.pos[i] - gs;
        if (diff == cplx(0.0))
            throw std::runtime_error("kernel: contour points coincide away from the diagonal");
        out[i] = std::imag(samples.vel[i] / diff) / M_PI;
    }
}

using DensityFn = std::function<cplx(double)>;

/// Composite-quadrature approximation of (V omega)(g(sigma)) for a density
/// given as a function of the parameter.
inline cplx apply_V(const KernelParams& params, const DensityFn& density, double sigma) {
    const CompositeRule rule = composite_rule(params.panels, params.points);
    cplx sum(0.0);
    for (int i = 0; i < rule.size(); ++i)
        sum += rule.weights[i] * kernel(*params.contour, sigma, rule.nodes[i], params.delta) *
               density(rule.nodes[i]);
    return sum;
}

/// (A omega)(g(sigma)) with A = I + V.
inline cplx apply_A(const KernelParams& params, const DensityFn& density, double sigma) {
    return density(sigma) + apply_V(params, density, sigma);
}

}  // namespace dlpgal
