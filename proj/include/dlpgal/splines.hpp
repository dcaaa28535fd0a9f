#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dlpgal/quadrature.hpp"

namespace dlpgal {

/// Cardinal B-spline generator of degree d, supported on [0, d+1].
/// Evaluated through the degree recurrence
///   phi_d(x) = (x/d) phi_{d-1}(x) + ((d+1-x)/d) phi_{d-1}(x-1),
/// which reproduces the d-fold convolution of the [0,1) indicator.
inline double bspline_eval(int d, double x) {
    if (d < 0) throw std::invalid_argument("bspline_eval: degree must be >= 0");
    if (d == 0) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
    if (x <= 0.0 || x >= d + 1.0) return 0.0;
    return (x / d) * bspline_eval(d - 1, x) + ((d + 1 - x) / d) * bspline_eval(d - 1, x - 1);
}

/// Normalization constant nu_d = (integral of phi_d^2 over [0, d+1])^(-1/2).
/// The integrand is a piecewise polynomial of degree 2d, so a (d+1)-point
/// Gauss rule per unit interval is exact.
inline double nu(int d) {
    if (d < 0) throw std::invalid_argument("nu: degree must be >= 0");
    if (d == 0) return 1.0;
    GaussRule rule = gauss_legendre(d + 1);
    double sum = 0.0;
    for (int k = 0; k <= d; ++k) {
        ScaledRule sr = scaled_rule(rule, k, k + 1.0);
        for (int i = 0; i < sr.size(); ++i) {
            double v = bspline_eval(d, sr.nodes[i]);
            sum += sr.weights[i] * v * v;
        }
    }
    return 1.0 / std::sqrt(sum);
}

/// Indices j in {0,...,n-(d+1)} whose open support interval (j/n,(j+d+1)/n)
/// contains no corner parameter k/q. A corner touching a support endpoint
/// does not disqualify j.
inline std::vector<int> index_set(int n, int d, int q) {
    if (d < 0) throw std::invalid_argument("index_set: degree must be >= 0");
    if (q < 1) throw std::invalid_argument("index_set: corner count must be >= 1");
    if (n < d + 1) throw std::invalid_argument("index_set: resolution must satisfy n >= d+1");
    if (n % q != 0) throw std::invalid_argument("index_set: q must divide n");
    const int p = n / q;  // corner spacing in knot units
    std::vector<int> out;
    out.reserve(n);
    for (int j = 0; j + d + 1 <= n; ++j) {
        bool blocked = false;
        for (int t = j + 1; t <= j + d; ++t) {
            if (t % p == 0) {
                blocked = true;
                break;
            }
        }
        if (!blocked) out.push_back(j);
    }
    return out;
}

/// Corner-avoiding spline space on the parameter interval: degree d,
/// resolution n, q corners at k/q. Basis functions are
/// nu_d * sqrt(n) * phi_d(n s - j), j in the index set.
class SplineBasis {
public:
    SplineBasis(int n, int d, int q)
        : n_(n), d_(d), q_(q), nu_(nu(d)), indices_(index_set(n, d, q)), position_(n, -1) {
        for (int i = 0; i < static_cast<int>(indices_.size()); ++i) position_[indices_[i]] = i;
    }

    int resolution() const { return n_; }
    int degree() const { return d_; }
    int corners() const { return q_; }
    double normalization() const { return nu_; }
    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }

    bool contains(int j) const { return j >= 0 && j < n_ && position_[j] >= 0; }

    /// Row/column slot of index j in the assembled system, -1 if absent.
    int position(int j) const { return (j >= 0 && j < n_) ? position_[j] : -1; }

    double support_lo(int j) const { return static_cast<double>(j) / n_; }
    double support_hi(int j) const { return static_cast<double>(j + d_ + 1) / n_; }

    /// Value of the normalized basis function j at parameter s (mod 1).
    double eval(int j, double s) const {
        if (!contains(j)) throw std::invalid_argument("SplineBasis: index not in the corner-avoiding set");
        return eval_unchecked(j, s);
    }

    double eval_unchecked(int j, double s) const {
        double t = s - std::floor(s);
        return nu_ * std::sqrt(static_cast<double>(n_)) * bspline_eval(d_, n_ * t - j);
    }

private:
    int n_, d_, q_;
    double nu_;
    std::vector<int> indices_;
    std::vector<int> position_;
};

inline double basis_at(const SplineBasis& basis, int j, double s) { return basis.eval(j, s); }

}  // namespace dlpgal
