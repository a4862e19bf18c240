#pragma once

// Arbitrary-precision scalar types used throughout the library.
//
// Real is an MPFR-backed float with thread-local default precision,
// Int/Rat are exact GMP integers and rationals. All public entry points
// compute at the precision configured via set_precision_bits(); callers
// that need a temporary bump use PrecisionGuard.

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ivpcap {

// expression templates are off project-wide: mixing lazy mpz expressions
// into mpfr constructors miscomputes, and value semantics are simpler
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

unsigned precision_bits();
void set_precision_bits(unsigned bits);

// RAII: bump (or lower) the working precision within a scope.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(unsigned bits) : saved_(precision_bits()) { set_precision_bits(bits); }
    ~PrecisionGuard() { set_precision_bits(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned saved_;
};

Real real_pi();
Real golden_ratio();      // (1+sqrt 5)/2 at current precision
Real gamma_function(const Real& x);

inline Real rmax(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real rmin(const Real& a, const Real& b) { return a < b ? a : b; }

// 2^-(precision_bits - margin); the generic rounding-slack unit.
Real rounding_eps(unsigned margin = 16);

Int floor_to_int(const Real& x);
Int ceil_to_int(const Real& x);

// Decimal-string round trips for the JSON/CSV surfaces. to_decimal uses
// enough digits to reproduce the value at the current precision.
std::string to_decimal(const Real& x, unsigned digits = 0);
Real parse_real(const std::string& s);

// Parses CLI-style base arguments; the keyword "golden" resolves to phi.
Real parse_base(const std::string& s);

struct InvalidSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleAtOne : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidBase : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct QuadratureNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPositiveDefinite : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DisksOverlap : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NomeOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionCap : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EnclosureTooLoose : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotIntegerValued : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// value with a certified absolute error bound: the true quantity lies in
// [value - error, value + error].
struct CertifiedReal {
    Real value;
    Real error;

    CertifiedReal() : value(0), error(0) {}
    CertifiedReal(Real v, Real e) : value(std::move(v)), error(std::move(e)) {}

    CertifiedReal operator+(const CertifiedReal& o) const {
        return {value + o.value, error + o.error + rounding_eps() * (abs(value) + abs(o.value) + 1)};
    }
    CertifiedReal operator-(const CertifiedReal& o) const {
        return {value - o.value, error + o.error + rounding_eps() * (abs(value) + abs(o.value) + 1)};
    }
    CertifiedReal operator*(const Real& s) const { return {value * s, error * abs(s) + rounding_eps() * (abs(value * s) + 1)}; }
};

}  // namespace ivpcap
