#pragma once

// Truncated formal power series with exact integer coefficients.
//
// A series of order N stores coefficients of x^0 .. x^N and represents its
// class modulo x^(N+1).  Binary operations truncate to the smaller order.
//
// Truncating infinite products: a factor (1 - x^j)^(+-1) or (1 + x^j) with
// j > N is congruent to 1 modulo x^(N+1), so products over j >= 1 are exact
// at order N once restricted to j <= N.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "fibcomp/error.hpp"

namespace fibcomp {

class TruncatedSeries {
 public:
  /// The zero series of order N.
  explicit TruncatedSeries(std::size_t order) : coeffs_(order + 1, mpz_class(0)) {}

  /// Coefficients x^0.. from the list; order is coeffs.size() - 1 unless given.
  TruncatedSeries(std::vector<mpz_class> coeffs, std::size_t order) : coeffs_(std::move(coeffs)) {
    coeffs_.resize(order + 1, mpz_class(0));
  }

  static TruncatedSeries from(std::initializer_list<long> coeffs, std::size_t order) {
    std::vector<mpz_class> c;
    for (long v : coeffs) c.emplace_back(v);
    if (c.size() > order + 1) c.resize(order + 1);
    return TruncatedSeries(std::move(c), order);
  }

  static TruncatedSeries one(std::size_t order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = 1;
    return s;
  }

  /// coefficient * x^degree (zero if degree exceeds the order).
  static TruncatedSeries monomial(std::size_t degree, const mpz_class& coefficient, std::size_t order) {
    TruncatedSeries s(order);
    if (degree <= order) s.coeffs_[degree] = coefficient;
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }

  const mpz_class& operator[](std::size_t i) const { return coeffs_.at(i); }
  mpz_class& operator[](std::size_t i) { return coeffs_.at(i); }

  TruncatedSeries truncated(std::size_t order) const {
    std::vector<mpz_class> c(coeffs_.begin(), coeffs_.begin() + std::min(order, this->order()) + 1);
    return TruncatedSeries(std::move(c), std::min(order, this->order()));
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) r.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    return r;
  }

  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries r(n);
    for (std::size_t i = 0; i <= n; ++i) r.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    return r;
  }

  friend TruncatedSeries operator*(const mpz_class& k, TruncatedSeries s) {
    for (auto& c : s.coeffs_) c *= k;
    return s;
  }

  /// In-place multiplication by 1/(1 - x^j): c[i] += c[i - j], ascending i.
  void divide_by_one_minus_xpow(std::size_t j) {
    if (j == 0) throw DomainError("1 - x^0 is not invertible");
    for (std::size_t i = j; i <= order(); ++i) coeffs_[i] += coeffs_[i - j];
  }

  /// In-place multiplication by (1 + sign x^j), sign = +1 or -1: descending i.
  void multiply_by_one_plus_xpow(std::size_t j, int sign) {
    if (j == 0) throw DomainError("degree must be positive");
    for (std::size_t i = order(); i >= j; --i) {
      if (sign > 0) coeffs_[i] += coeffs_[i - j]; else coeffs_[i] -= coeffs_[i - j];
      if (i == j) break;
    }
  }

 private:
  std::vector<mpz_class> coeffs_;
};

/// Cauchy product truncated at the smaller order.
inline TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  std::size_t n = std::min(a.order(), b.order());
  TruncatedSeries r(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; i + j <= n; ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return r;
}

/// Multiplicative inverse; the constant term must be +1 or -1.
inline TruncatedSeries series_inverse(const TruncatedSeries& a) {
  const mpz_class& a0 = a[0];
  if (a0 != 1 && a0 != -1) {
    throw DomainError("series with constant term " + a0.get_str() + " is not invertible over the integers");
  }
  std::size_t n = a.order();
  TruncatedSeries r(n);
  r[0] = a0;  // 1/a0 = a0 for a unit
  for (std::size_t i = 1; i <= n; ++i) {
    mpz_class acc = 0;
    for (std::size_t j = 1; j <= i; ++j) acc += a[j] * r[i - j];
    r[i] = -a0 * acc;
  }
  return r;
}

/// prod_{j=1..N} 1/(1 - x^j); coefficient n is p(n).
inline TruncatedSeries partition_gf(std::size_t order) {
  auto s = TruncatedSeries::one(order);
  for (std::size_t j = 1; j <= order; ++j) s.divide_by_one_minus_xpow(j);
  return s;
}

/// x/(1 - 2x); coefficient n is 2^(n-1) for n >= 1.
inline TruncatedSeries compositions_gf(std::size_t order) {
  if (order < 1) throw DomainError("compositions_gf needs order >= 1");
  auto denominator = TruncatedSeries::from({1, -2}, order);
  return series_mul(TruncatedSeries::monomial(1, 1, order), series_inverse(denominator));
}

/// x^(l(l+1)/2) / prod_{i=1..l}(1 - x^i): partitions into exactly l distinct parts.
inline TruncatedSeries distinct_partitions_ell_gf(std::size_t ell, std::size_t order) {
  const std::uint64_t shift = static_cast<std::uint64_t>(ell) * (ell + 1) / 2;
  auto s = TruncatedSeries::monomial(shift, 1, order);
  if (shift > order) return s;
  for (std::size_t i = 1; i <= ell; ++i) s.divide_by_one_minus_xpow(i);
  return s;
}

inline mpz_class factorial(std::size_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

/// sum_l l! x^(l(l+1)/2) / prod_{i=1..l}(1 - x^i): compositions into distinct parts.
inline TruncatedSeries distinct_compositions_gf(std::size_t order) {
  TruncatedSeries total(order);
  for (std::size_t ell = 0; ell * (ell + 1) / 2 <= order; ++ell) {
    total = total + factorial(ell) * distinct_partitions_ell_gf(ell, order);
  }
  return total;
}

/// prod_{j odd <= N} 1/(1 - x^j): partitions into odd parts.
inline TruncatedSeries odd_parts_gf(std::size_t order) {
  auto s = TruncatedSeries::one(order);
  for (std::size_t j = 1; j <= order; j += 2) s.divide_by_one_minus_xpow(j);
  return s;
}

/// prod_{j <= N} (1 + x^j): partitions into distinct parts.
inline TruncatedSeries distinct_parts_gf(std::size_t order) {
  auto s = TruncatedSeries::one(order);
  for (std::size_t j = 1; j <= order; ++j) s.multiply_by_one_plus_xpow(j, +1);
  return s;
}

/// prod_{j <= N} (1 - x^j).
inline TruncatedSeries euler_product(std::size_t order) {
  auto s = TruncatedSeries::one(order);
  for (std::size_t j = 1; j <= order; ++j) s.multiply_by_one_plus_xpow(j, -1);
  return s;
}

}  // namespace fibcomp
