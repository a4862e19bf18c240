#pragma once

// Minimal complex type over Real. std::complex is not usable with
// multiprecision backends, and only a handful of operations are needed.

#include "ivpcap/real.hpp"

namespace ivpcap {

struct Cplx {
    Real re;
    Real im;

    Cplx() : re(0), im(0) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cplx(Real r) : re(std::move(r)), im(0) {}

    Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
    Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
    Cplx operator-() const { return {-re, -im}; }
    Cplx operator*(const Cplx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cplx operator*(const Real& s) const { return {re * s, im * s}; }
    Cplx operator/(const Real& s) const { return {re / s, im / s}; }

    Cplx operator/(const Cplx& o) const {
        Real d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }

    Cplx conj() const { return {re, -im}; }
    Real abs2() const { return re * re + im * im; }
    Real abs() const { return sqrt(abs2()); }
};

inline Cplx operator*(const Real& s, const Cplx& z) { return z * s; }

// sin(x+iy) = sin x cosh y + i cos x sinh y
inline Cplx sin_c(const Cplx& z) {
    return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

inline Cplx polar_unit(const Real& theta) { return {cos(theta), sin(theta)}; }

}  // namespace ivpcap
