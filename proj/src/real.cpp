#include "ivpcap/real.hpp"

#include <cmath>

namespace ivpcap {

namespace {
thread_local unsigned g_bits = 256;

unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits / 3.3219280948873623)) + 2;
}
}  // namespace

unsigned precision_bits() { return g_bits; }

void set_precision_bits(unsigned bits) {
    if (bits < 64) throw InvalidSpec("precision_bits must be >= 64");
    g_bits = bits;
    Real::default_precision(bits_to_digits10(bits));
}

namespace {
// ensure the default precision is initialized before any Real is constructed
struct PrecisionInit {
    PrecisionInit() { Real::default_precision(bits_to_digits10(256)); }
};
thread_local PrecisionInit g_precision_init;
}  // namespace

Real real_pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

Real golden_ratio() { return (1 + sqrt(Real(5))) / 2; }

Real gamma_function(const Real& x) {
    Real r;
    mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

Real rounding_eps(unsigned margin) {
    Real r = 1;
    if (g_bits <= margin) return r;
    mpfr_div_2ui(r.backend().data(), r.backend().data(), g_bits - margin, MPFR_RNDU);
    return r;
}

Int floor_to_int(const Real& x) { return Int(floor(x)); }
Int ceil_to_int(const Real& x) { return Int(ceil(x)); }

std::string to_decimal(const Real& x, unsigned digits) {
    if (digits == 0) digits = bits_to_digits10(g_bits);
    return x.str(digits);
}

Real parse_real(const std::string& s) { return Real(s); }

Real parse_base(const std::string& s) {
    if (s == "golden" || s == "phi") return golden_ratio();
    return Real(s);
}

}  // namespace ivpcap
