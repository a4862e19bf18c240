#include "ivpcap/genfunc.hpp"

#include <functional>

namespace ivpcap {

namespace {
Real pole_guard2() {
    // squared guard distance 2^{-precision/2} around the pole
    Real g = 1;
    mpfr_div_2ui(g.backend().data(), g.backend().data(), precision_bits(), MPFR_RNDN);
    return g;
}
}  // namespace

Cplx gen_func_eval(const IvpCoeffs& p, const Cplx& z) {
    Cplx one_minus(Real(1) - z.re, -z.im);
    if (one_minus.abs2() < pole_guard2()) throw PoleAtOne("z too close to the pole at 1");
    Cplx w = z / one_minus;
    Cplx s(Real(0), Real(0));
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        s = s * w;
        s.re += Real(*it);
    }
    return s / one_minus;
}

Cplx mobius_psi(const Cplx& z) {
    Cplx den(Real(1) - z.re, -z.im);
    if (den.abs2() < pole_guard2()) throw PoleAtOne("psi undefined at 1");
    return z / den;
}

Cplx mobius_phi(const Cplx& w) {
    Cplx den(Real(1) + w.re, w.im);
    if (den.abs2() < pole_guard2()) throw PoleAtOne("phi undefined at -1");
    return w / den;
}

CircleSpec image_circle(const Real& base, Orientation o) {
    if (base <= 1) throw InvalidBase("image_circle requires base > 1");
    Real den = base * base - 1;
    Real radius = base / den;
    if (o == Orientation::PositiveSide) return {Cplx(1 / den), radius};
    return {Cplx(-base * base / den), radius};
}

GaussLegendre gauss_legendre(unsigned n) {
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    Real pi = real_pi();
    Real conv = rounding_eps(24);
    for (unsigned i = 0; i < n; ++i) {
        // Newton on P_n from the Chebyshev-like initial guess
        Real x = cos(pi * (Real(i) + Real("0.75")) / (Real(n) + Real("0.5")));
        Real dp(1);
        for (int iter = 0; iter < 200; ++iter) {
            Real p0(1), p1 = x;
            for (unsigned j = 2; j <= n; ++j) {
                Real p2 = ((2 * Real(j) - 1) * x * p1 - (Real(j) - 1) * p0) / Real(j);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < conv) break;
        }
        rule.nodes[i] = (x + 1) / 2;
        rule.weights[i] = 1 / ((1 - x * x) * dp * dp);
    }
    return rule;
}

namespace {

// (1/M) sum over the M-point uniform grid of |g_P|^2 on the circle of
// radius rho; equals the (1/2 pi rho)-normalized arc integral.
Real arc_mean(const IvpCoeffs& p, const Real& rho, unsigned m) {
    Real pi = real_pi();
    Real s = 0;
    for (unsigned i = 0; i < m; ++i) {
        Cplx z = polar_unit(2 * pi * Real(i) / Real(m)) * rho;
        s += gen_func_eval(p, z).abs2();
    }
    return s / m;
}

// sum_i w_i * arc_mean(rho_i), rho_i = R sqrt(u_i): the normalized area
// integral over the disk of radius R (or its image for the exterior case).
Real area_mean(const IvpCoeffs& p, const Real& r_disk, unsigned gl_n, unsigned m, bool exterior) {
    GaussLegendre gl = gauss_legendre(gl_n);
    Real pi = real_pi();
    Real s = 0;
    for (unsigned i = 0; i < gl_n; ++i) {
        Real rho = r_disk * sqrt(gl.nodes[i]);
        Real inner = 0;
        for (unsigned j = 0; j < m; ++j) {
            Cplx u = polar_unit(2 * pi * Real(j) / Real(m)) * rho;
            Cplx z = exterior ? Cplx(Real(1)) / u : u;
            inner += gen_func_eval(p, z).abs2();
        }
        s += gl.weights[i] * inner / m;
    }
    return s;
}

CertifiedReal doubling(const std::function<Real(unsigned)>& level, const Real& tol) {
    Real prev = level(0);
    for (unsigned lvl = 1; lvl <= 9; ++lvl) {
        Real cur = level(lvl);
        Real diff = abs(cur - prev);
        if (diff <= tol / 2) return {cur, 2 * diff + rounding_eps() * (abs(cur) + 1)};
        prev = cur;
    }
    throw QuadratureNotConverged("adaptive refinement exceeded the configured depth");
}

}  // namespace

QuadratureIdentity quadrature_identity_check(const IvpCoeffs& p, const Real& r, Measure measure,
                                             const Real& tol) {
    if (r <= 0 || abs(r - 1) < Real("0.01")) throw InvalidSpec("radius must be positive and away from 1");
    bool inside = r < 1;
    if (measure == Measure::Area && !inside) throw InvalidSpec("area identity needs r < 1");
    if (measure == Measure::ExteriorArea && inside) throw InvalidSpec("exterior identity needs r > 1");

    QuadratureIdentity out;
    if (measure == Measure::Arc) {
        out.lhs = doubling([&](unsigned lvl) { return arc_mean(p, r, 64u << lvl); }, tol);
    } else if (measure == Measure::Area) {
        out.lhs = doubling([&](unsigned lvl) { return area_mean(p, r, 16u << lvl, 64u << lvl, false); }, tol);
    } else {
        out.lhs = doubling([&](unsigned lvl) { return area_mean(p, 1 / r, 16u << lvl, 64u << lvl, true); }, tol);
    }

    NormMode mode = measure == Measure::Arc ? NormMode::L2 : NormMode::L2Weighted;
    if (inside) {
        GrowthSpec spec(1 / r, std::nullopt, mode, Real(1));
        out.rhs = growth_functional(p, spec, Side::Positive, tol);
    } else {
        GrowthSpec spec(Real(2), r, mode, Real(1));
        out.rhs = growth_functional(p, spec, Side::Negative, tol);
    }
    return out;
}

}  // namespace ivpcap
