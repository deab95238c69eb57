#pragma once

#include <string>

#include <gmpxx.h>

#include "fibcomp/error.hpp"

namespace fibcomp {

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long value) : q_(value) {}  // NOLINT: integers convert implicitly
  ExactRational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  ExactRational(long num, long den) : ExactRational(mpz_class(num), mpz_class(den)) {}
  explicit ExactRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& get() const noexcept { return q_; }

  bool is_integer() const { return q_.get_den() == 1; }

  mpz_class floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return f;
  }

  std::string to_string() const { return q_.get_str(); }

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) { return ExactRational(mpq_class(a.q_ + b.q_)); }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) { return ExactRational(mpq_class(a.q_ - b.q_)); }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) { return ExactRational(mpq_class(a.q_ * b.q_)); }
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b) {
    if (b.q_ == 0) throw DomainError("division by zero");
    return ExactRational(mpq_class(a.q_ / b.q_));
  }
  friend ExactRational operator-(const ExactRational& a) { return ExactRational(mpq_class(-a.q_)); }
  ExactRational& operator+=(const ExactRational& o) { return *this = *this + o; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }
  friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_{0};
};

/// ((x)) = x - floor(x) - 1/2 for non-integer x, 0 for integer x.
inline ExactRational sawtooth(const ExactRational& x) {
  if (x.is_integer()) return ExactRational(0);
  return x - ExactRational(x.floor(), 1) - ExactRational(1, 2);
}

}  // namespace fibcomp
