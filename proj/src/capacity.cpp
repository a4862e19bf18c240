#include "ivpcap/capacity.hpp"

#include <algorithm>
#include <cmath>

namespace ivpcap {

Cplx theta1(const Cplx& z, const Real& q, const Real& tol) {
    if (q <= 0 || q >= 1) throw NomeOutOfRange("nome must lie in (0,1)");
    Cplx s(Real(0), Real(0));
    Real expim = exp(abs(z.im));
    for (unsigned n = 0;; ++n) {
        Real expo = (Real(n) + Real(1) / 2);
        Real qn = pow(q, expo * expo);
        Cplx term = sin_c(z * Real(2 * n + 1)) * qn;
        s = (n % 2 == 0) ? s + term : s - term;
        // |sin((2n+1)z)| <= e^{(2n+1)|Im z|}
        if (qn * pow(expim, 2 * n + 1) < tol && n >= 2) break;
        if (n > 10000) throw QuadratureNotConverged("theta series failed to converge");
    }
    return s * Real(2);
}

Real theta1_prime0(const Real& q, const Real& tol) {
    if (q <= 0 || q >= 1) throw NomeOutOfRange("nome must lie in (0,1)");
    Real s = 0;
    for (unsigned n = 0;; ++n) {
        Real expo = (Real(n) + Real(1) / 2);
        Real qn = pow(q, expo * expo);
        Real term = Real(2 * n + 1) * qn;
        s += (n % 2 == 0) ? term : -term;
        if (term < tol && n >= 2) break;
        if (n > 10000) throw QuadratureNotConverged("theta series failed to converge");
    }
    s *= 2;
    // cross-check against 2 q^{1/4} prod (1-q^{2n})^3
    Real prod = 1;
    Real q2n = q * q;
    while (q2n > tol / 8) {
        prod *= (1 - q2n);
        q2n *= q * q;
    }
    Real alt = 2 * pow(q, Real(1) / 4) * prod * prod * prod;
    if (abs(alt - s) > 64 * tol * (abs(s) + 1))
        throw QuadratureNotConverged("theta1'(0): series and product forms disagree");
    return s;
}

CapacityValue capacity_two_disks(const Real& a, const Real& b) {
    if (a <= 1 || b <= 1) throw InvalidBase("capacity_two_disks requires bases > 1");
    Real la = log(a), lb = log(b);
    Real alpha = 1 / (a * b);
    Real tol = rounding_eps(32);
    Real pref = exp((la * la + lb * lb) / (2 * (la + lb))) / 2;
    Real tp = theta1_prime0(alpha, tol);
    Cplx ta = theta1(Cplx(Real(0), la), alpha, tol);
    Cplx tb = theta1(Cplx(Real(0), lb), alpha, tol);
    Real denom = sqrt(ta.abs() * tb.abs());
    Real val = pref * tp / denom;
    return {val, abs(val) * rounding_eps(24) + tol};
}

CapacityValue capacity_from_circle_norms(const std::vector<CircleSpec>& circles, unsigned kmax) {
    if (kmax < 20) throw InvalidSpec("kmax must be at least 20");
    // condition of the moment matrix grows like (R_max/cap)^{2 kmax}
    Real rmax = 0;
    for (const CircleSpec& c : circles) rmax = rmax < abs(c.center.re) + c.radius ? abs(c.center.re) + c.radius : rmax;
    unsigned needed = std::max<unsigned>(precision_bits(),
                                         192 + kmax * (4 + static_cast<unsigned>(std::max(
                                                               0.0, 2 * std::log2(rmax.convert_to<double>())))));
    std::vector<Real> logb;
    {
        PrecisionGuard guard(needed);
        std::vector<CircleSpec> cs;
        cs.reserve(circles.size());
        for (const CircleSpec& c : circles) cs.emplace_back(c.center, c.radius);
        std::vector<Real> w(cs.size(), Real(1));
        GramMatrix g = arc_moment_gram(cs, w, kmax);
        OpNorms norms = op_norms(g, OpKind::Szego);
        logb.reserve(norms.norms.size());
        for (const Real& x : norms.norms) logb.push_back(log(x));
    }
    // variance-minimizing lag: the norm sequence carries a quasi-periodic
    // factor, so slopes are compared at a lag that best matches its phase
    unsigned lo = kmax / 2;
    Real best_spread = 0;
    Real best_med = 0;
    bool have = false;
    for (unsigned lag = 6; lag <= std::max(7u, kmax / 3); ++lag) {
        std::vector<Real> slopes;
        for (unsigned k = lo; k + lag <= kmax; ++k) slopes.push_back((logb[k + lag] - logb[k]) / lag);
        if (slopes.size() < 3) continue;
        std::sort(slopes.begin(), slopes.end());
        Real spread = slopes.back() - slopes.front();
        Real med = slopes[slopes.size() / 2];
        if (!have || spread < best_spread) {
            best_spread = spread;
            best_med = med;
            have = true;
        }
    }
    if (!have) throw InvalidSpec("kmax too small for the lag estimator");
    Real val = exp(best_med);
    return {val, val * best_spread + rounding_eps(24) * (val + 1)};
}

CapacityValue capacity_via_op_norms(const Real& a, const Real& b, unsigned kmax) {
    if (a <= 1 || b <= 1) throw InvalidBase("bases must exceed 1");
    std::vector<CircleSpec> cs{image_circle(a, Orientation::PositiveSide),
                               image_circle(b, Orientation::NegativeSide)};
    return capacity_from_circle_norms(cs, kmax);
}

Real critical_b(const Real& a, const Real& tol) {
    if (tol <= 0) throw InvalidSpec("tol must be positive");
    Real phi = golden_ratio();
    if (a <= phi) throw NoBracket("no critical B exists for a <= phi");
    Real lo = phi;  // D2 has radius exactly 1 at B = phi, so gamma >= 1
    Real hi = 64;
    if (capacity_two_disks(a, hi).value >= 1)
        throw NoBracket("gamma stays above 1 up to the bracket cap; a is too close to critical");
    while (hi - lo > tol) {
        Real mid = (lo + hi) / 2;
        (capacity_two_disks(a, mid).value >= 1 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

Real log_mean_modulus(const Real& a) {
    if (a < 0 || a == 1) throw InvalidSpec("requires a >= 0, a != 1");
    if (a == 0) return Real(0);
    Real pi = real_pi();
    Real prev = 0;
    Real tol = rounding_eps(24);
    for (unsigned lvl = 0; lvl <= 14; ++lvl) {
        unsigned m = 64u << lvl;
        Real s = 0;
        for (unsigned i = 0; i < m; ++i) {
            Real th = 2 * pi * Real(i) / Real(m);
            Cplx z(cos(th) + a, sin(th));
            s += log(z.abs2()) / 2;
        }
        s /= m;
        if (lvl > 0 && abs(s - prev) < tol) return s;
        prev = s;
    }
    throw QuadratureNotConverged("log_mean_modulus did not converge");
}

}  // namespace ivpcap
