#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace teloinv {

/// Arbitrary-precision real with runtime-selectable decimal precision.
/// Precision is taken from Real::default_precision() at construction time,
/// so computations scope their precision with ScopedPrecision below.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Exact integers and rationals for combinatorial work (binomials,
/// inversion weights) that must not be rounded before final evaluation.
using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;

/// Decimal-precision contract for the high-precision transform layer.
struct PrecisionContext {
    unsigned digits = 200;
};

/// RAII guard: sets the default decimal precision of Real for the current
/// scope and restores the previous value on exit.
class ScopedPrecision {
  public:
    explicit ScopedPrecision(unsigned digits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~ScopedPrecision() { Real::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    unsigned saved_;
};

/// Round a value to `digits` decimal digits (returns a fresh number carrying
/// exactly that precision).
inline Real round_to(const Real& v, unsigned digits) {
    Real out(v);
    out.precision(digits);
    return out;
}

}  // namespace teloinv
