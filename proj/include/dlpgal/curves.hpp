#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dlpgal {

using cplx = std::complex<double>;

/// One smooth piece of a contour, parametrized over the local interval [0,1].
struct Arc {
    std::function<cplx(double)> pos;
    std::function<cplx(double)> vel;  // d/du
    std::function<cplx(double)> acc;  // d^2/du^2
};

/// Closed piecewise-smooth curve with q corner candidates at s = k/q,
/// parametrized 1-periodically: arc k covers s in [k/q,(k+1)/q].
/// Derivatives are taken with respect to the global parameter s and are
/// right-sided at the breakpoints.
class Contour {
public:
    Contour(std::vector<Arc> arcs, bool smooth)
        : arcs_(std::move(arcs)), q_(static_cast<int>(arcs_.size())), smooth_(smooth) {
        if (q_ < 1) throw std::invalid_argument("Contour: needs at least one arc");
        check_junctions();
    }

    int corners() const { return q_; }
    bool is_smooth() const { return smooth_; }

    cplx eval(double s) const {
        auto [k, u] = locate(s);
        return arcs_[k].pos(u);
    }
    cplx deriv1(double s) const {
        auto [k, u] = locate(s);
        return static_cast<double>(q_) * arcs_[k].vel(u);
    }
    cplx deriv2(double s) const {
        auto [k, u] = locate(s);
        return static_cast<double>(q_) * q_ * arcs_[k].acc(u);
    }

    int arc_index(double s) const { return locate(s).first; }

    std::vector<cplx> corner_points() const {
        std::vector<cplx> pts(q_);
        for (int k = 0; k < q_; ++k) pts[k] = arcs_[k].pos(0.0);
        return pts;
    }

    /// Opening angles at the breakpoints: the argument of -g'(s-0)/g'(s+0)
    /// normalized into (0, 2pi], i.e. the interior angle swept from the
    /// outgoing to the reversed incoming semi-tangent. Flagged-smooth
    /// contours report pi at their artificial breakpoint.
    std::vector<double> corner_angles() const {
        std::vector<double> angles(q_);
        for (int k = 0; k < q_; ++k) {
            if (smooth_) {
                angles[k] = M_PI;
                continue;
            }
            const cplx in = arcs_[(k + q_ - 1) % q_].vel(1.0);
            const cplx out = arcs_[k].vel(0.0);
            if (in == cplx(0.0) || out == cplx(0.0))
                throw std::runtime_error("corner_angles: vanishing one-sided tangent");
            double a = std::arg(-in / out);
            if (a <= 0.0) a += 2.0 * M_PI;
            angles[k] = a;
        }
        return angles;
    }

    /// Inclination of each right semi-tangent against the real axis, in
    /// [0, 2pi). Reported alongside the opening angles; nothing downstream
    /// depends on it.
    std::vector<double> corner_inclinations() const {
        std::vector<double> incl(q_);
        for (int k = 0; k < q_; ++k) {
            const cplx out = arcs_[k].vel(0.0);
            if (out == cplx(0.0))
                throw std::runtime_error("corner_inclinations: vanishing one-sided tangent");
            double a = std::arg(out);
            if (a < 0.0) a += 2.0 * M_PI;
            incl[k] = a;
        }
        return incl;
    }

private:
    std::pair<int, double> locate(double s) const {
        double t = s - std::floor(s);
        int k = static_cast<int>(t * q_);
        if (k >= q_) k = q_ - 1;
        return {k, t * q_ - k};
    }

    // Closure and the speed condition |g'(k/q+0)| = |g'(k/q-0)| at every
    // junction, to relative tolerance 1e-10; the tangent must not vanish on
    // a sample grid of each open arc.
    void check_junctions() const {
        double scale = 0.0;
        for (int k = 0; k < q_; ++k) scale = std::max(scale, std::abs(arcs_[k].pos(0.0)));
        if (scale == 0.0) scale = 1.0;
        for (int k = 0; k < q_; ++k) {
            const int prev = (k + q_ - 1) % q_;
            if (std::abs(arcs_[prev].pos(1.0) - arcs_[k].pos(0.0)) > 1e-10 * scale)
                throw std::logic_error("Contour: arcs do not close up at junction " + std::to_string(k));
            const double vin = std::abs(arcs_[prev].vel(1.0));
            const double vout = std::abs(arcs_[k].vel(0.0));
            if (std::abs(vin - vout) > 1e-10 * std::max(vin, vout))
                throw std::logic_error("Contour: one-sided speeds mismatch at junction " + std::to_string(k));
            for (int i = 1; i < 32; ++i) {
                if (arcs_[k].vel(i / 32.0) == cplx(0.0))
                    throw std::logic_error("Contour: vanishing tangent inside arc " + std::to_string(k));
            }
        }
    }

    std::vector<Arc> arcs_;
    int q_;
    bool smooth_;
};

inline std::vector<double> corner_angles(const Contour& contour) { return contour.corner_angles(); }

namespace detail {

constexpr double two_pi = 2.0 * M_PI;

inline Arc ellipse_arc(double a, double b, double s0, double s1) {
    const double len = s1 - s0;
    auto gamma = [a, b](double s) { return cplx(a * std::cos(two_pi * s), b * std::sin(two_pi * s)); };
    auto dgamma = [a, b](double s) {
        return two_pi * cplx(-a * std::sin(two_pi * s), b * std::cos(two_pi * s));
    };
    auto ddgamma = [a, b](double s) {
        return -two_pi * two_pi * cplx(a * std::cos(two_pi * s), b * std::sin(two_pi * s));
    };
    return Arc{[=](double u) { return gamma(s0 + len * u); },
               [=](double u) { return len * dgamma(s0 + len * u); },
               [=](double u) { return len * len * ddgamma(s0 + len * u); }};
}

/// Cubic Hermite arc: endpoints A, B with endpoint velocities T0, T1.
inline Arc hermite_arc(cplx A, cplx B, cplx T0, cplx T1) {
    return Arc{[=](double u) {
                   const double u2 = u * u, u3 = u2 * u;
                   return (2 * u3 - 3 * u2 + 1) * A + (u3 - 2 * u2 + u) * T0 +
                          (-2 * u3 + 3 * u2) * B + (u3 - u2) * T1;
               },
               [=](double u) {
                   const double u2 = u * u;
                   return (6 * u2 - 6 * u) * A + (3 * u2 - 4 * u + 1) * T0 +
                          (-6 * u2 + 6 * u) * B + (3 * u2 - 2 * u) * T1;
               },
               [=](double u) {
                   return (12 * u - 6) * A + (6 * u - 4) * T0 + (-12 * u + 6) * B + (6 * u - 2) * T1;
               }};
}

inline void require_semi_axes(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("ellipse semi-axes must be positive");
}

inline void require_opening(double theta) {
    if (!(theta > 0.0) || !(theta < two_pi))
        throw std::invalid_argument("opening angle must lie in (0, 2pi)");
}

}  // namespace detail

/// Ellipse a cos(2 pi s) + i b sin(2 pi s); a single smooth arc whose
/// breakpoint at s = 0 is not a genuine corner.
inline Contour make_ellipse(double a, double b) {
    detail::require_semi_axes(a, b);
    return Contour({detail::ellipse_arc(a, b, 0.0, 1.0)}, true);
}

/// Two-corner curve cut from the ellipse: the part s in [3/8,5/8] is removed
/// and the cut points are joined by a cubic Hermite "mouth" that dips toward
/// the origin. Endpoint speeds are chosen so both junctions satisfy the
/// one-sided speed condition.
inline Contour make_pacman(double a, double b) {
    detail::require_semi_axes(a, b);
    const Arc outer = detail::ellipse_arc(a, b, 5.0 / 8.0, 11.0 / 8.0);
    const cplx A = cplx(a * std::cos(detail::two_pi * 3 / 8), b * std::sin(detail::two_pi * 3 / 8));
    const cplx B = cplx(a * std::cos(detail::two_pi * 5 / 8), b * std::sin(detail::two_pi * 5 / 8));
    auto espeed = [a, b](double s) {
        return std::abs(detail::two_pi *
                        cplx(-a * std::sin(detail::two_pi * s), b * std::cos(detail::two_pi * s)));
    };
    const double c0 = 0.75 * espeed(3.0 / 8.0);
    const double c1 = 0.75 * espeed(5.0 / 8.0);
    const Arc mouth = detail::hermite_arc(A, B, c0 * (-A) / std::abs(A), c1 * B / std::abs(B));
    return Contour({outer, mouth}, false);
}

/// Four-corner curve: the ellipse with the parts s in [3/8,5/8] and
/// [7/8,9/8] cut away and both gaps bridged by origin-dipping Hermite arcs.
inline Contour make_battleax(double a, double b) {
    detail::require_semi_axes(a, b);
    auto epoint = [a, b](double s) {
        return cplx(a * std::cos(detail::two_pi * s), b * std::sin(detail::two_pi * s));
    };
    auto espeed = [a, b](double s) {
        return std::abs(detail::two_pi *
                        cplx(-a * std::sin(detail::two_pi * s), b * std::cos(detail::two_pi * s)));
    };
    auto notch = [&](double sa, double sb) {
        const cplx A = epoint(sa), B = epoint(sb);
        return detail::hermite_arc(A, B, 0.25 * espeed(sa) * (-A) / std::abs(A),
                                   0.25 * espeed(sb) * B / std::abs(B));
    };
    return Contour({detail::ellipse_arc(a, b, 1.0 / 8.0, 3.0 / 8.0), notch(3.0 / 8.0, 5.0 / 8.0),
                    detail::ellipse_arc(a, b, 5.0 / 8.0, 7.0 / 8.0), notch(7.0 / 8.0, 9.0 / 8.0)},
                   false);
}

/// One-corner model curve sin(pi s) e^{i theta (s - 1/2)}: a teardrop whose
/// corner at the origin opens by exactly theta.
inline Contour make_l1(double theta) {
    detail::require_opening(theta);
    Arc arc{[theta](double u) { return std::sin(M_PI * u) * std::exp(cplx(0, theta * (u - 0.5))); },
            [theta](double u) {
                return (cplx(M_PI * std::cos(M_PI * u)) + cplx(0, theta) * std::sin(M_PI * u)) *
                       std::exp(cplx(0, theta * (u - 0.5)));
            },
            [theta](double u) {
                const cplx e = std::exp(cplx(0, theta * (u - 0.5)));
                return ((-M_PI * M_PI - theta * theta) * std::sin(M_PI * u) +
                        cplx(0, 2 * theta * M_PI) * std::cos(M_PI * u)) *
                       e;
            }};
    return Contour({arc}, false);
}

/// Two-corner model curve built from two circular arcs of radius
/// 1/(2 sin(theta/2)); corners at +-i/2 both open by theta.
inline Contour make_l2(double theta) {
    detail::require_opening(theta);
    const double c = 0.5 / std::tan(0.5 * theta);
    const double R = 0.5 / std::sin(0.5 * theta);
    auto branch = [theta, c, R](double sign) {
        return Arc{[=](double u) { return sign * (-c + R * std::exp(cplx(0, theta * (u - 0.5)))); },
                   [=](double u) { return sign * cplx(0, theta) * R * std::exp(cplx(0, theta * (u - 0.5))); },
                   [=](double u) { return sign * (-theta * theta) * R * std::exp(cplx(0, theta * (u - 0.5))); }};
    };
    return Contour({branch(1.0), branch(-1.0)}, false);
}

/// Four-corner model curve: a cubic Hermite arc from A = 1-i to B = 1+i,
/// replicated by quarter-turn rotations about the origin. The endpoint
/// tangents have magnitude 3 and make angles -theta/2 with the inward ray
/// at A and +theta/2 with the outward ray at B, which makes all four
/// corners open by exactly theta (theta = pi/2 gives the square, theta = pi
/// a smooth oval).
inline Contour make_l4(double theta) {
    detail::require_opening(theta);
    const cplx tA = 3.0 * std::exp(cplx(0, 3 * M_PI / 4 - 0.5 * theta));
    const cplx tB = 3.0 * std::exp(cplx(0, M_PI / 4 + 0.5 * theta));
    const Arc base = detail::hermite_arc(cplx(1, -1), cplx(1, 1), tA, tB);
    std::vector<Arc> arcs;
    cplx rot(1, 0);
    for (int k = 0; k < 4; ++k) {
        arcs.push_back(Arc{[base, rot](double u) { return rot * base.pos(u); },
                           [base, rot](double u) { return rot * base.vel(u); },
                           [base, rot](double u) { return rot * base.acc(u); }});
        rot *= cplx(0, 1);
    }
    return Contour(std::move(arcs), false);
}

}  // namespace dlpgal
