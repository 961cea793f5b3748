#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ulamkac {

/// Arbitrary-precision integer and rational, used everywhere exactness matters.
using Int = mpz_class;
using Rat = mpq_class;

/// A requested computation exceeds the configured resource budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structural invariant of the symbolic pipeline was violated.  This never
/// fires on well-formed inputs; it signals a builder or ordering bug.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The working precision of a floating-point series run degenerated.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Canonical decimal-free rendering: "p/q", or just "p" when q = 1.
inline std::string rat_string(const Rat& x) {
    return x.get_str();
}

/// Natural log of a positive big float via mantissa/exponent split.
/// The mantissa fits a double, so the result carries double accuracy on top
/// of whatever error the input already had.
inline double log_value(const mpf_class& x) {
    if (sgn(x) <= 0) {
        throw std::domain_error("log_value: argument must be positive");
    }
    long e = 0;
    const double d = mpf_get_d_2exp(&e, x.get_mpf_t());
    return std::log(d) + static_cast<double>(e) * 0.693147180559945309417232121458176568;
}

/// Natural log of a positive exact rational, computed at `precision_bits`.
inline double log_value(const Rat& x, unsigned long precision_bits = 256) {
    mpf_class f(0, precision_bits);
    mpf_set_q(f.get_mpf_t(), x.get_mpq_t());
    return log_value(f);
}

}  // namespace ulamkac
