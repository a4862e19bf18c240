#pragma once

// The generating function g_P of an IVP, its analytic continuation, the
// Mobius change of variables w = z/(1-z), images of the constraint
// circles, and quadrature oracles for the arc/area integral identities.

#include "ivpcap/complex.hpp"
#include "ivpcap/ivp.hpp"

#include <vector>

namespace ivpcap {

struct CircleSpec {
    Cplx center;
    Real radius;

    CircleSpec(Cplx c, Real r) : center(std::move(c)), radius(std::move(r)) {
        if (radius <= 0) throw InvalidSpec("radius must be positive");
    }
};

// g_P(z) = (1/(1-z)) sum_k c_k (z/(1-z))^k, analytic on C \ {1}.
// Throws PoleAtOne inside the guard distance 2^{-precision/2} of 1.
Cplx gen_func_eval(const IvpCoeffs& p, const Cplx& z);

Cplx mobius_psi(const Cplx& z);  // z/(1-z)
Cplx mobius_phi(const Cplx& w);  // w/(1+w)

enum class Orientation { PositiveSide, NegativeSide };

// psi(base^{-1} T) for the positive side, psi(base T) for the negative,
// with the closed-form centers and radii.
CircleSpec image_circle(const Real& base, Orientation o);

enum class Measure { Arc, Area, ExteriorArea };

// Left side: quadrature of |g_P|^2 against the requested measure at radius
// r. Right side: the matching value series. Arc handles both r < 1 (values
// on N) and r > 1 (values on the negative integers); Area needs r < 1,
// ExteriorArea needs r > 1.
struct QuadratureIdentity {
    CertifiedReal lhs;
    CertifiedReal rhs;
};
QuadratureIdentity quadrature_identity_check(const IvpCoeffs& p, const Real& r, Measure measure,
                                             const Real& tol = Real("1e-30"));

// Gauss-Legendre rule on [0,1] at the current working precision.
struct GaussLegendre {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};
GaussLegendre gauss_legendre(unsigned n);

}  // namespace ivpcap
