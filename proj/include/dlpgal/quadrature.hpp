#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dlpgal {

/// Gauss-Legendre rule on the canonical interval [-1,1].
struct GaussRule {
    std::vector<double> nodes;    // strictly increasing, symmetric about 0
    std::vector<double> weights;  // positive, sum = 2

    int size() const { return static_cast<int>(nodes.size()); }
};

/// A rule mapped onto an arbitrary interval [a,b].
struct ScaledRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Composite panel rule on [0,1]: nodes (l + eps_p)/m, weights w_p/m,
/// where eps_p, w_p are the r-point Gauss-Legendre data scaled to [0,1].
struct CompositeRule {
    int panels = 0;
    int points = 0;
    std::vector<double> nodes;
    std::vector<double> weights;

    int size() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

// Legendre P_r(x) and its derivative by the three-term recurrence.
inline std::pair<double, double> legendre(int r, double x) {
    if (r == 0) return {1.0, 0.0};
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= r; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double dp = r * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

}  // namespace detail

/// Nodes are the roots of P_r obtained by Newton iteration from Chebyshev
/// initial guesses (tolerance 1e-15); weights are 2/((1-x^2) P_r'(x)^2).
/// The half-rule is mirrored so the returned nodes are exactly symmetric.
inline GaussRule gauss_legendre(int r) {
    if (r < 1) throw std::invalid_argument("gauss_legendre: point count must be >= 1");
    GaussRule rule;
    rule.nodes.assign(r, 0.0);
    rule.weights.assign(r, 0.0);
    for (int i = 0; i < r / 2; ++i) {
        // i-th root from the right, located in (0,1)
        double x = std::cos(M_PI * (i + 0.75) / (r + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = detail::legendre(r, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[r - 1 - i] = x;
        rule.nodes[i] = -x;
    }
    // odd r: the middle node is 0 exactly
    for (int i = 0; i < r; ++i) {
        auto [p, dp] = detail::legendre(r, rule.nodes[i]);
        (void)p;
        rule.weights[i] = 2.0 / ((1.0 - rule.nodes[i] * rule.nodes[i]) * dp * dp);
    }
    return rule;
}

/// Affine image of a canonical rule on [a,b]; weights pick up the factor (b-a)/2.
inline ScaledRule scaled_rule(const GaussRule& rule, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("scaled_rule: interval must satisfy a < b");
    ScaledRule out;
    const int r = rule.size();
    out.nodes.resize(r);
    out.weights.resize(r);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < r; ++i) {
        out.nodes[i] = mid + half * rule.nodes[i];
        out.weights[i] = half * rule.weights[i];
    }
    return out;
}

inline CompositeRule composite_rule(int m, int r) {
    if (m < 1) throw std::invalid_argument("composite_rule: panel count must be >= 1");
    GaussRule base = gauss_legendre(r);
    CompositeRule out;
    out.panels = m;
    out.points = r;
    out.nodes.resize(static_cast<size_t>(m) * r);
    out.weights.resize(static_cast<size_t>(m) * r);
    for (int l = 0; l < m; ++l) {
        for (int p = 0; p < r; ++p) {
            const double eps = 0.5 * (1.0 + base.nodes[p]);  // in (0,1)
            out.nodes[static_cast<size_t>(l) * r + p] = (l + eps) / m;
            out.weights[static_cast<size_t>(l) * r + p] = 0.5 * base.weights[p] / m;
        }
    }
    return out;
}

}  // namespace dlpgal
