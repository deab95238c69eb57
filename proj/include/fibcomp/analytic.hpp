#pragma once

// Convergent series for p(n) and q(n) evaluated in high precision.
//
//   p(n) = 1/(pi sqrt 2) * sum_{k>=1} sqrt(k) A_k(n) D_k(n)
//     A_k(n) = sum_{0<=h<k, (h,k)=1} exp(pi i s(h,k) - 2 pi i n h / k)
//     D_k(n) = d/dn [ sinh(C sqrt m) / sqrt m ],  m = n - 1/24,  C = (pi/k) sqrt(2/3)
//
//   q(n) = pi / sqrt(24n+1) * sum_{k odd} k^-1 B_k(n) I_1(pi sqrt(48n+2) / (12k))
//     B_k(n) = sum_{1<=h<k, (h,k)=1} exp(pi i (t(h,k) - 2nh/k)),  B_1(n) = 1 (h = 0)
//
// The Dedekind-type sums s and t are exact rationals.  Phases are reduced
// exactly modulo 2 before any floating point is involved.  A value is
// accepted as an integer only after the certification policy below passes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <exception>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "fibcomp/error.hpp"
#include "fibcomp/hpreal.hpp"
#include "fibcomp/rational.hpp"

namespace fibcomp {

namespace detail {

inline void require_coprime(std::uint64_t h, std::uint64_t k) {
  if (k == 0) throw DomainError("k must be positive");
  if (h >= k && !(h == 0 && k == 1)) throw DomainError("h must satisfy 0 <= h < k");
  if (std::gcd(h, k) != 1) {
    throw DomainError("gcd(" + std::to_string(h) + ", " + std::to_string(k) + ") != 1");
  }
}

// Every sawtooth value below is (2a - k)/(2k) for an integer a, so both
// sums are integers over 4k^2.  Accumulate the integer part exactly.
inline ExactRational over_four_k_squared(__int128 acc, std::uint64_t k) {
  mpz_class num;
  const bool neg = acc < 0;
  unsigned __int128 mag = neg ? static_cast<unsigned __int128>(-acc) : static_cast<unsigned __int128>(acc);
  mpz_class hi(static_cast<unsigned long>(mag >> 64)), lo(static_cast<unsigned long>(mag));
  num = (hi << 64) + lo;
  if (neg) num = -num;
  mpz_class den = mpz_class(4) * k * k;
  return ExactRational(num, den);
}

}  // namespace detail

/// s(h,k) = sum_{j=1}^{k-1} ((j/k)) ((hj/k)).
inline ExactRational dedekind_s(std::uint64_t h, std::uint64_t k) {
  detail::require_coprime(h, k);
  const auto sk = static_cast<__int128>(k);
  __int128 acc = 0;
  for (std::uint64_t j = 1; j < k; ++j) {
    std::uint64_t r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(h) * j) % k);
    if (r == 0) continue;  // ((integer)) = 0
    acc += (2 * static_cast<__int128>(j) - sk) * (2 * static_cast<__int128>(r) - sk);
  }
  return detail::over_four_k_squared(acc, k);
}

/// t(h,k) = sum_{j=1}^{k} (((2j-1)/(2k))) ((h(2j-1)/k)), k odd.
inline ExactRational hagis_t(std::uint64_t h, std::uint64_t k) {
  if (k % 2 == 0) throw DomainError("t(h,k) needs odd k");
  detail::require_coprime(h, k);
  const auto sk = static_cast<__int128>(k);
  __int128 acc = 0;
  for (std::uint64_t j = 1; j <= k; ++j) {
    // (2j-1)/(2k) lies in (0,1) and is never an integer.
    std::uint64_t r = static_cast<std::uint64_t>((static_cast<unsigned __int128>(h) * (2 * j - 1)) % k);
    if (r == 0) continue;
    acc += (2 * static_cast<__int128>(j) - 1 - sk) * (2 * static_cast<__int128>(r) - sk);
  }
  return detail::over_four_k_squared(acc, k);
}

struct ComplexHP {
  HPReal re;
  HPReal im;
};

namespace detail {

// Exact phase value num/den attached to residue h.
struct Phase {
  std::uint64_t h;
  std::int64_t num;
  std::int64_t den;
};

enum class PhaseKind { dedekind, hagis };

inline std::vector<Phase> build_row(std::uint64_t k, PhaseKind kind) {
  std::vector<Phase> row;
  auto push = [&](std::uint64_t h, const ExactRational& v) {
    row.push_back({h, v.numerator().get_si(), v.denominator().get_si()});
  };
  if (kind == PhaseKind::dedekind) {
    for (std::uint64_t h = 0; h < k; ++h) {
      if (std::gcd(h, k) == 1) push(h, dedekind_s(h, k));
    }
  } else if (k == 1) {
    push(0, hagis_t(0, 1));
  } else {
    for (std::uint64_t h = 1; h < k; ++h) {
      if (std::gcd(h, k) == 1) push(h, hagis_t(h, k));
    }
  }
  return row;
}

// Rows depend only on k, so they are shared across every n.
class PhaseCache {
 public:
  const std::vector<Phase>& row(std::uint64_t k, PhaseKind kind) {
    std::lock_guard lock(mutex_);
    auto& rows = kind == PhaseKind::dedekind ? dedekind_ : hagis_;
    auto it = rows.find(k);
    if (it == rows.end()) it = rows.emplace(k, std::make_unique<std::vector<Phase>>(build_row(k, kind))).first;
    return *it->second;
  }

  static PhaseCache& instance() {
    static PhaseCache cache;
    return cache;
  }

 private:
  std::mutex mutex_;
  std::map<std::uint64_t, std::unique_ptr<std::vector<Phase>>> dedekind_;
  std::map<std::uint64_t, std::unique_ptr<std::vector<Phase>>> hagis_;
};

// sum over the row of exp(pi i (phase - 2nh/k)).
inline ComplexHP phase_sum(const std::vector<Phase>& row, std::uint64_t k, std::uint64_t n, mpfr_prec_t bits) {
  ComplexHP out{HPReal(0, bits), HPReal(0, bits)};
  const HPReal pi = HPReal::pi(bits);
  HPReal angle(bits), c(bits), s(bits);
  const auto nk = static_cast<__int128>(n % k);
  for (const auto& ph : row) {
    // theta = num/den - 2 (n mod k) h / k, as M / L with L = lcm(den, k).
    const __int128 den = ph.den;
    const __int128 L = den / std::gcd(ph.den, static_cast<std::int64_t>(k)) * static_cast<__int128>(k);
    __int128 M = static_cast<__int128>(ph.num) * (L / den) -
                 2 * nk * static_cast<__int128>(ph.h) * (L / static_cast<__int128>(k));
    M %= 2 * L;
    if (M < 0) M += 2 * L;
    mpfr_set_si(angle.get(), static_cast<long>(M), MPFR_RNDN);
    mpfr_div_si(angle.get(), angle.get(), static_cast<long>(L), MPFR_RNDN);
    mpfr_mul(angle.get(), angle.get(), pi.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    out.re += c;
    out.im += s;
  }
  return out;
}

inline void check_imaginary(const HPReal& im, mpfr_prec_t bits, const char* what, std::uint64_t k, std::uint64_t n) {
  HPReal tol = pow2(-static_cast<long>(bits / 2), bits);
  if (!(abs(im) < tol)) {
    throw std::runtime_error(std::string(what) + " imaginary part too large at k=" + std::to_string(k) +
                             ", n=" + std::to_string(n) + ": " + im.to_decimal());
  }
}

}  // namespace detail

/// Full complex value of A_k(n).
inline ComplexHP kloosterman_sum(std::uint64_t k, std::uint64_t n, mpfr_prec_t bits) {
  if (k < 1) throw DomainError("A_k(n) needs k >= 1");
  const auto& row = detail::PhaseCache::instance().row(k, detail::PhaseKind::dedekind);
  return detail::phase_sum(row, k, n, bits);
}

/// Real part of A_k(n).  Throws if the imaginary part is not below 2^(-bits/2).
inline HPReal kloosterman_A(std::uint64_t k, std::uint64_t n, mpfr_prec_t bits) {
  auto z = kloosterman_sum(k, n, bits);
  detail::check_imaginary(z.im, bits, "A_k(n)", k, n);
  return z.re;
}

/// Inner exponential sum of the q(n) series, including the h = 0 term at k = 1.
inline ComplexHP hagis_inner_sum(std::uint64_t k, std::uint64_t n, mpfr_prec_t bits) {
  if (k % 2 == 0) throw DomainError("the q(n) series runs over odd k");
  const auto& row = detail::PhaseCache::instance().row(k, detail::PhaseKind::hagis);
  return detail::phase_sum(row, k, n, bits);
}

/// I_1(z) = sum_m (z/2)^(2m+1) / (m! (m+1)!) for z >= 0.
inline HPReal bessel_I1(const HPReal& z) {
  if (z.sign() < 0) throw DomainError("bessel_I1 is evaluated for z >= 0 only");
  const mpfr_prec_t bits = z.precision_bits();
  if (z.sign() == 0) return HPReal(0, bits);
  HPReal half = z / HPReal(2, bits);
  HPReal quarter_sq = half * half;
  HPReal term = half;
  HPReal sum = half;
  const HPReal eps = pow2(-static_cast<long>(bits) - 8, bits);
  for (long m = 0;; ++m) {
    term *= quarter_sq;
    term /= HPReal((m + 1) * (m + 2), bits);
    sum += term;
    if (term < sum * eps) break;
  }
  return sum;
}

struct SeriesOptions {
  std::optional<std::uint64_t> kmax;   // starting truncation; default ceil(8 sqrt n) + 16
  std::optional<mpfr_prec_t> bits;     // starting precision; default from the size estimate
  unsigned threads = 1;
  int max_escalations = 4;
};

struct SeriesEvalReport {
  std::uint64_t n = 0;
  std::uint64_t k_terms_used = 0;  // terms k <= k_terms_used were summed
  mpfr_prec_t precision_bits = 0;
  HPReal raw_value;
  mpz_class rounded;
  HPReal residual;   // |raw_value - rounded|
  HPReal stability;  // |S(2K) - S(K)|
  int escalations = 0;
  bool certified = false;
};

namespace detail {

// Accept S(K) when it and S(2K) round to the same integer, both sit within
// 1/4 of it, and |S(2K) - S(K)| < 1/16.
inline constexpr long kStabilityLog2 = -4;

enum class SeriesKind { rademacher, hagis };

// Term k of the sum (before the global prefactor).  Zero for even k in the q series.
inline HPReal series_term(SeriesKind kind, std::uint64_t k, std::uint64_t n, mpfr_prec_t bits) {
  if (kind == SeriesKind::rademacher) {
    const HPReal pi = HPReal::pi(bits);
    HPReal kk(static_cast<long>(k), bits);
    HPReal m = HPReal(mpq_class(24 * static_cast<long>(n) - 1, 24), bits);
    HPReal c = pi / kk * sqrt(HPReal(mpq_class(2, 3), bits));
    HPReal root = sqrt(m);
    HPReal x = c * root;
    HPReal two_m = HPReal(2, bits) * m;
    HPReal deriv = c * cosh(x) / two_m - sinh(x) / (two_m * root);
    return sqrt(kk) * kloosterman_A(k, n, bits) * deriv;
  }
  if (k % 2 == 0) return HPReal(0, bits);
  auto inner = hagis_inner_sum(k, n, bits);
  check_imaginary(inner.im, bits, "q(n) inner sum", k, n);
  const HPReal pi = HPReal::pi(bits);
  HPReal arg = pi * sqrt(HPReal(static_cast<long>(48 * n + 2), bits)) / HPReal(static_cast<long>(12 * k), bits);
  return inner.re / HPReal(static_cast<long>(k), bits) * bessel_I1(arg);
}

inline HPReal series_prefactor(SeriesKind kind, std::uint64_t n, mpfr_prec_t bits) {
  const HPReal pi = HPReal::pi(bits);
  if (kind == SeriesKind::rademacher) return HPReal(1, bits) / (pi * sqrt(HPReal(2, bits)));
  return pi / sqrt(HPReal(static_cast<long>(24 * n + 1), bits));
}

// Terms 1..K in a vector; may run on several threads, the result is
// independent of the thread count.
inline std::vector<HPReal> series_terms(SeriesKind kind, std::uint64_t n, std::uint64_t K, mpfr_prec_t bits,
                                        unsigned threads) {
  std::vector<HPReal> terms(K, HPReal(bits));
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(K, 1))));
  if (threads == 1) {
    for (std::uint64_t k = 1; k <= K; ++k) terms[k - 1] = series_term(kind, k, n, bits);
    return terms;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::uint64_t k = 1 + t; k <= K; k += threads) terms[k - 1] = series_term(kind, k, n, bits);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return terms;
}

inline HPReal ascending_sum(const std::vector<HPReal>& terms, std::uint64_t upto, mpfr_prec_t bits) {
  HPReal sum(0, bits);
  for (std::uint64_t i = 0; i < upto && i < terms.size(); ++i) sum += terms[i];
  return sum;
}

// Bit length of the expected size of p(n) or q(n), from the leading exponential.
inline long estimated_bits(SeriesKind kind, std::uint64_t n) {
  const double dn = static_cast<double>(n);
  double log_e = kind == SeriesKind::rademacher ? std::numbers::pi * std::sqrt(2.0 * dn / 3.0) - std::log(4.0 * dn * std::sqrt(3.0))
                                                : std::numbers::pi * std::sqrt(dn / 3.0) - std::log(4.0 * std::pow(3.0, 0.25) * std::pow(dn, 0.75));
  return std::max(1L, static_cast<long>(std::ceil(log_e / std::log(2.0))));
}

inline SeriesEvalReport certified_series(SeriesKind kind, std::uint64_t n, const SeriesOptions& opts) {
  if (n < 1) throw DomainError("the convergent series are evaluated for n >= 1");
  std::uint64_t K = opts.kmax.value_or(static_cast<std::uint64_t>(std::ceil(8.0 * std::sqrt(static_cast<double>(n)))) + 16);
  if (K < 1) throw DomainError("kmax must be >= 1");
  mpfr_prec_t bits = opts.bits.value_or(std::max<mpfr_prec_t>(128, estimated_bits(kind, n) + 64));
  if (bits < HPReal::kMinBits) throw DomainError("precision must be at least 64 bits");

  SeriesEvalReport rep;
  rep.n = n;
  for (int esc = 0;; ++esc) {
    auto terms = series_terms(kind, n, 2 * K, bits, opts.threads);
    HPReal pref = series_prefactor(kind, n, bits);
    HPReal s1 = pref * ascending_sum(terms, K, bits);
    HPReal s2 = pref * ascending_sum(terms, 2 * K, bits);

    rep.k_terms_used = K;
    rep.precision_bits = bits;
    rep.rounded = s1.round();
    rep.residual = abs(s1 - HPReal(rep.rounded, bits));
    rep.stability = abs(s2 - s1);
    rep.raw_value = std::move(s1);
    rep.escalations = esc;

    const HPReal quarter = pow2(-2, bits);
    const bool close = rep.residual < quarter && abs(s2 - HPReal(rep.rounded, bits)) < quarter;
    const bool stable = s2.round() == rep.rounded && rep.stability < pow2(kStabilityLog2, bits);
    rep.certified = close && stable;
    if (rep.certified || esc >= opts.max_escalations) return rep;
    K *= 2;
    bits *= 2;
  }
}

}  // namespace detail

/// p(n) from the Rademacher series with certified rounding.
inline SeriesEvalReport rademacher_p(std::uint64_t n, const SeriesOptions& opts = {}) {
  return detail::certified_series(detail::SeriesKind::rademacher, n, opts);
}

/// q(n) from the Hagis series with certified rounding.
inline SeriesEvalReport hagis_q(std::uint64_t n, const SeriesOptions& opts = {}) {
  return detail::certified_series(detail::SeriesKind::hagis, n, opts);
}

/// Uncertified partial sums over k <= K, for convergence studies.
inline HPReal rademacher_partial_sum(std::uint64_t n, std::uint64_t K, mpfr_prec_t bits) {
  if (n < 1) throw DomainError("n must be >= 1");
  auto terms = detail::series_terms(detail::SeriesKind::rademacher, n, K, bits, 1);
  return detail::series_prefactor(detail::SeriesKind::rademacher, n, bits) * detail::ascending_sum(terms, K, bits);
}

inline HPReal hagis_partial_sum(std::uint64_t n, std::uint64_t K, mpfr_prec_t bits) {
  if (n < 1) throw DomainError("n must be >= 1");
  auto terms = detail::series_terms(detail::SeriesKind::hagis, n, K, bits, 1);
  return detail::series_prefactor(detail::SeriesKind::hagis, n, bits) * detail::ascending_sum(terms, K, bits);
}

}  // namespace fibcomp
