#pragma once

// RAII value type over an MPFR number with an explicit working precision.
// Binary operations produce a result at the coarser precision of the two
// operands; all rounding is to nearest.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "fibcomp/error.hpp"

namespace fibcomp {

class HPReal {
 public:
  static constexpr mpfr_prec_t kMinBits = 64;

  explicit HPReal(mpfr_prec_t bits = kMinBits) : bits_(check(bits)) {
    mpfr_init2(v_, bits_);
    mpfr_set_zero(v_, 1);
  }

  HPReal(long value, mpfr_prec_t bits) : HPReal(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }
  HPReal(const mpz_class& value, mpfr_prec_t bits) : HPReal(bits) { mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN); }
  HPReal(const mpq_class& value, mpfr_prec_t bits) : HPReal(bits) { mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN); }

  /// Parses a decimal string (e.g. "1.59063685").
  static HPReal parse(const std::string& text, mpfr_prec_t bits) {
    HPReal r(bits);
    if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0) throw DomainError("not a decimal number: " + text);
    return r;
  }

  HPReal(const HPReal& o) : bits_(o.bits_) {
    mpfr_init2(v_, bits_);
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  HPReal(HPReal&& o) noexcept : bits_(o.bits_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  HPReal& operator=(const HPReal& o) {
    if (this != &o) {
      bits_ = o.bits_;
      mpfr_set_prec(v_, bits_);
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  HPReal& operator=(HPReal&& o) noexcept {
    std::swap(bits_, o.bits_);
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~HPReal() { mpfr_clear(v_); }

  mpfr_prec_t precision_bits() const noexcept { return bits_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  static HPReal pi(mpfr_prec_t bits) {
    HPReal r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Nearest integer (ties away from zero).
  mpz_class round() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDNA);
    return z;
  }

  /// Fixed-point decimal with as many significant digits as the precision supports.
  std::string to_decimal() const {
    if (!is_finite()) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
    const long sig = static_cast<long>(std::ceil(static_cast<double>(bits_) * 0.30102999566398120)) + 1;
    long int_digits = 1;
    if (!mpfr_zero_p(v_)) {
      long e = mpfr_get_exp(v_);  // |v| in [2^(e-1), 2^e)
      int_digits = std::max(1L, static_cast<long>(std::ceil(static_cast<double>(e) * 0.30102999566398120)));
    }
    long decimals = std::max(0L, sig - int_digits);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rf", static_cast<int>(decimals), v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  HPReal& operator+=(const HPReal& o) { return apply(o, mpfr_add); }
  HPReal& operator-=(const HPReal& o) { return apply(o, mpfr_sub); }
  HPReal& operator*=(const HPReal& o) { return apply(o, mpfr_mul); }
  HPReal& operator/=(const HPReal& o) { return apply(o, mpfr_div); }

  friend HPReal operator+(HPReal a, const HPReal& b) { return a += b; }
  friend HPReal operator-(HPReal a, const HPReal& b) { return a -= b; }
  friend HPReal operator*(HPReal a, const HPReal& b) { return a *= b; }
  friend HPReal operator/(HPReal a, const HPReal& b) { return a /= b; }
  friend HPReal operator-(HPReal a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }

  friend bool operator<(const HPReal& a, const HPReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const HPReal& a, const HPReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const HPReal& a, const HPReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const HPReal& a, const HPReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  /// Applies a unary MPFR function at this value's precision.
  template <class F>
  HPReal map(F f) const {
    HPReal r(bits_);
    f(r.v_, v_, MPFR_RNDN);
    return r;
  }

 private:
  static mpfr_prec_t check(mpfr_prec_t bits) {
    if (bits < kMinBits) throw DomainError("precision must be at least 64 bits");
    return bits;
  }

  template <class F>
  HPReal& apply(const HPReal& o, F f) {
    if (o.bits_ < bits_) {
      mpfr_prec_round(v_, o.bits_, MPFR_RNDN);
      bits_ = o.bits_;
    }
    f(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_prec_t bits_;
  mpfr_t v_;
};

inline HPReal sqrt(const HPReal& x) { return x.map(mpfr_sqrt); }
inline HPReal exp(const HPReal& x) { return x.map(mpfr_exp); }
inline HPReal sinh(const HPReal& x) { return x.map(mpfr_sinh); }
inline HPReal cosh(const HPReal& x) { return x.map(mpfr_cosh); }
inline HPReal cos(const HPReal& x) { return x.map(mpfr_cos); }
inline HPReal sin(const HPReal& x) { return x.map(mpfr_sin); }
inline HPReal abs(const HPReal& x) { return x.map(mpfr_abs); }

/// 2^e at the given precision.
inline HPReal pow2(long e, mpfr_prec_t bits) {
  HPReal r(1, bits);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

}  // namespace fibcomp
