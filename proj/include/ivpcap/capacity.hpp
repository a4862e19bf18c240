#pragma once

// Logarithmic capacity of the union of the two constraint disks via the
// theta-function formula, the critical curve gamma = 1, and the
// independent estimator from orthogonal-polynomial norm ratios.

#include "ivpcap/gram.hpp"

namespace ivpcap {

struct CapacityValue {
    Real value;
    Real error;
};

// First Jacobi theta function, series in the nome q in (0,1):
// theta1(z,q) = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1) z).
Cplx theta1(const Cplx& z, const Real& q, const Real& tol = Real("1e-45"));

// theta1'(0,q), series cross-checked against 2 q^{1/4} prod (1-q^{2n})^3.
Real theta1_prime0(const Real& q, const Real& tol = Real("1e-45"));

// gamma_{a,b} = cap(D1 u D2) for the disks attached to bases a,b > 1.
CapacityValue capacity_two_disks(const Real& a, const Real& b);

// Capacity estimate from monic Szego norms on a family of circles: a
// variance-minimizing lag is chosen and the median slope of log beta_k over
// that lag is returned; the error bar is the observed slope spread. Exact
// for a single circle.
CapacityValue capacity_from_circle_norms(const std::vector<CircleSpec>& circles, unsigned kmax);
CapacityValue capacity_via_op_norms(const Real& a, const Real& b, unsigned kmax);

// B with gamma_{a,B} = 1, by bisection on [phi, 64]; gamma is strictly
// decreasing in B. Throws NoBracket when no crossing exists below the cap.
Real critical_b(const Real& a, const Real& tol);

// (1/2pi) int log|e^{i theta} + a| d theta, equal to log max(a,1);
// computed by quadrature as a self-test of the quadrature stack.
Real log_mean_modulus(const Real& a);

}  // namespace ivpcap
