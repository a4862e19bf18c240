#pragma once

// Integer-valued polynomials in the binomial basis: exact arithmetic,
// evaluation on the integers, and certified growth functionals.

#include "ivpcap/real.hpp"

#include <optional>
#include <vector>

namespace ivpcap {

// Extended binomial coefficient: exact for any integer upper argument,
// binom(-n,k) = (-1)^k binom(n+k-1,k).
Int binomial(long long n, unsigned k);
Real binomial_real(long long n, unsigned k);

// Coefficients (c_0,...,c_d) of P(x) = sum c_k binom(x,k). Canonical form:
// c_d != 0 unless the polynomial is zero, which is (d=0, c_0=0).
struct IvpCoeffs {
    unsigned degree = 0;
    std::vector<Int> coeffs{Int(0)};

    static IvpCoeffs make(std::vector<Int> c);  // trims to canonical form
    bool is_zero() const { return degree == 0 && coeffs[0] == 0; }

    bool operator==(const IvpCoeffs&) const = default;
};

Int eval(const IvpCoeffs& p, long long n);

// Monomial-basis view, exact rationals. from_monomial throws
// NotIntegerValued when the input is not an integer combination of
// binomials.
std::vector<Rat> to_monomial(const IvpCoeffs& p);
IvpCoeffs from_monomial(const std::vector<Rat>& q);
Rat eval_monomial(const std::vector<Rat>& q, long long n);

enum class NormMode { LInf, L2, L2Weighted };
enum class Side { Positive, Negative };

// Growth-constraint description: |P(n)| vs t*a^n on the naturals and,
// when b is present, |P(-n)| vs t*b^n on the negative integers.
struct GrowthSpec {
    Real a;
    std::optional<Real> b;
    NormMode mode = NormMode::L2;
    Real t = Real(1);

    GrowthSpec(Real a_, std::optional<Real> b_, NormMode m, Real t_);
    bool two_sided() const { return b.has_value(); }
};

// LInf: sup_n |P(+-n)| a^{-n}, an exact finite maximum (the range bound
// comes from c_a below). L2 / L2Weighted: the series with a certified
// geometric tail bound at tolerance eps.
CertifiedReal growth_functional(const IvpCoeffs& p, const GrowthSpec& spec, Side side,
                                const Real& eps = Real("1e-40"));

// Smallest constant C > e such that a degree-d polynomial bounded by a^n on
// 0..ceil(C*d) is bounded by a^n everywhere; two-sided variant takes the max
// of the two one-sided constants.
Real c_a(const Real& a);
Real c_ab(const Real& a, const Real& b);

// Range actually scanned by the LInf functional on each side.
long long linf_check_range(const GrowthSpec& spec, unsigned d, Side side);

}  // namespace ivpcap
