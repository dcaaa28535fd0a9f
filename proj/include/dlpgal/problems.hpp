#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dlpgal/curves.hpp"
#include "dlpgal/galerkin.hpp"

namespace dlpgal {

enum class RhsKind {
    f1,        // -z |z|
    f2,        // -1 + iz below the real axis, 1 + iz on or above it
    f3,        // -2 + iz below Im z0, 2 + iz on or above the line
    constant,  // f = value
    trig,      // f(z) = Re z + 2
};

struct RhsSpec {
    RhsKind kind = RhsKind::f1;
    cplx z0 = default_z0();  // reference point for f3
    cplx value = cplx(1.0);  // constant case

    /// gamma_e(3/8) of the a=3, b=4 ellipse.
    static cplx default_z0() { return reference_point(3.0, 4.0); }

    /// gamma_e(3/8) for given semi-axes: (-a + ib) sqrt(2)/2.
    static cplx reference_point(double a, double b) {
        const double s = std::sqrt(2.0) / 2.0;
        return cplx(-a * s, b * s);
    }
};

inline cplx rhs_eval(const RhsSpec& spec, cplx z) {
    switch (spec.kind) {
        case RhsKind::f1:
            return -z * std::abs(z);
        case RhsKind::f2:
            return (z.imag() < 0.0 ? cplx(-1.0) : cplx(1.0)) + cplx(0, 1) * z;
        case RhsKind::f3:
            return (z.imag() < spec.z0.imag() ? cplx(-2.0) : cplx(2.0)) + cplx(0, 1) * z;
        case RhsKind::constant:
            return spec.value;
        case RhsKind::trig:
            return cplx(z.real() + 2.0);
    }
    throw std::invalid_argument("rhs_eval: unknown right-hand side");
}

inline BoundaryFn rhs_function(const RhsSpec& spec) {
    return [spec](cplx z) { return rhs_eval(spec, z); };
}

}  // namespace dlpgal
