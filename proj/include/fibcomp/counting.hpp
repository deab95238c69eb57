#pragma once

// Exact counters: c(n), Fibonacci / Q(n), Euler's pentagonal recurrence for
// p(n) and the triangular-number recurrence for q(n), plus the double
// precision Binet evaluation used to exhibit its roundoff failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "fibcomp/error.hpp"

namespace fibcomp {

using BigCount = mpz_class;

inline bool is_triangular(std::uint64_t n) {
  // n = m(m+1)/2  <=>  8n + 1 is a perfect square.
  mpz_class d = mpz_class(8) * n + 1;
  return mpz_perfect_square_p(d.get_mpz_t()) != 0;
}

/// Which shifts to use in the q(n) recurrence.
enum class QShifts {
  generalized,  // q(n - k(3k-1)) + q(n - k(3k+1)); the identity that holds
  printed,      // q(n - 3k + 1) + q(n - 3k - 1); the literal printed form
};

/// Memoized table for one of the recurrences.  Grows monotonically.
///
/// Not internally synchronized: readers may share a built table, but
/// extend_to() must be serialized by the caller.
class MemoTable {
 public:
  enum class Kind { p, q, fib };

  explicit MemoTable(Kind kind) : kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

  /// Largest index held, or -1 when empty.
  std::int64_t max_index() const noexcept { return static_cast<std::int64_t>(values_.size()) - 1; }

  const std::vector<BigCount>& values() const noexcept { return values_; }

  void extend_to(std::uint64_t n) {
    if (n >= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max() / 4)) {
      throw DomainError("index too large for a memo table");
    }
    values_.reserve(n + 1);
    while (values_.size() <= n) values_.push_back(next_value(values_.size()));
  }

  const BigCount& at(std::uint64_t n) {
    extend_to(n);
    return values_[n];
  }

  /// Value at n with the convention value(m) = 0 for m < 0.  No extension.
  BigCount get(std::int64_t m) const {
    if (m < 0) return 0;
    if (m > max_index()) throw DomainError("memo table index " + std::to_string(m) + " not computed");
    return values_[static_cast<std::size_t>(m)];
  }

  /// Recomputes index n from the table's own lower entries and compares.
  bool satisfies_recurrence_at(std::uint64_t n) const {
    if (static_cast<std::int64_t>(n) > max_index()) return false;
    return recurrence_value(n, values_) == values_[n];
  }

  static std::string kind_name(Kind k) {
    switch (k) {
      case Kind::p: return "p";
      case Kind::q: return "q";
      case Kind::fib: return "fib";
    }
    return "?";
  }

  // Cache file: "fibcomp-table v1 kind=<p|q|fib> max=<N>" then N+1 decimal lines.

  void save(const std::filesystem::path& path) const {
    if (values_.empty()) throw DomainError("refusing to save an empty table");
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
      out << "fibcomp-table v1 kind=" << kind_name(kind_) << " max=" << max_index() << "\n";
      for (const auto& v : values_) out << v.get_str() << "\n";
      if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

  /// Loads a cache file, validating the header and the recurrence on a
  /// sample of 16 indices (all indices when the table is smaller).
  static MemoTable load(const std::filesystem::path& path, Kind expected) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open cache file " + path.string());
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, version, kind_field, max_field;
    hs >> magic >> version >> kind_field >> max_field;
    if (magic != "fibcomp-table" || version != "v1") throw DomainError("bad cache header in " + path.string());
    if (kind_field != "kind=" + kind_name(expected)) {
      throw DomainError("cache file " + path.string() + " holds " + kind_field + ", expected kind=" +
                        kind_name(expected));
    }
    if (max_field.rfind("max=", 0) != 0) throw DomainError("bad max field in " + path.string());
    std::uint64_t max = 0;
    try {
      max = std::stoull(max_field.substr(4));
    } catch (const std::exception&) {
      throw DomainError("bad max field in " + path.string());
    }

    MemoTable table(expected);
    table.values_.reserve(max + 1);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      BigCount v;
      if (v.set_str(line, 10) != 0 || v < 0) throw DomainError("bad value line in " + path.string());
      table.values_.push_back(std::move(v));
    }
    if (table.values_.size() != max + 1) {
      throw DomainError("cache file " + path.string() + " has " + std::to_string(table.values_.size()) +
                        " values, header says " + std::to_string(max + 1));
    }

    std::vector<std::uint64_t> sample;
    if (max + 1 <= 16) {
      for (std::uint64_t i = 0; i <= max; ++i) sample.push_back(i);
    } else {
      std::mt19937_64 rng(0x5eed'f1bc'0de5ULL ^ max);
      std::uniform_int_distribution<std::uint64_t> pick(0, max);
      for (int i = 0; i < 16; ++i) sample.push_back(pick(rng));
    }
    for (auto i : sample) {
      if (!table.satisfies_recurrence_at(i)) {
        throw DomainError("cache file " + path.string() + " fails the recurrence at index " + std::to_string(i));
      }
    }
    return table;
  }

 private:
  BigCount next_value(std::uint64_t n) const { return recurrence_value(n, values_); }

  // Value at n from entries [0, n) of `v`.
  BigCount recurrence_value(std::uint64_t n, const std::vector<BigCount>& v) const {
    auto at = [&](std::int64_t m) -> BigCount {
      return m < 0 ? BigCount(0) : v[static_cast<std::size_t>(m)];
    };
    const auto sn = static_cast<std::int64_t>(n);
    switch (kind_) {
      case Kind::fib:
        if (n < 2) return BigCount(static_cast<unsigned long>(n));
        return at(sn - 1) + at(sn - 2);
      case Kind::p: {
        if (n == 0) return 1;
        BigCount sum = 0;
        for (std::int64_t j = 1;; ++j) {
          std::int64_t g1 = j * (3 * j - 1) / 2;
          if (g1 > sn) break;
          std::int64_t g2 = j * (3 * j + 1) / 2;
          BigCount term = at(sn - g1) + at(sn - g2);
          if (j % 2 == 1) sum += term; else sum -= term;
        }
        return sum;
      }
      case Kind::q: {
        // q(n) = [n triangular] - sum_k (-1)^k (q(n - k(3k-1)) + q(n - k(3k+1)))
        BigCount sum = is_triangular(n) ? 1 : 0;
        for (std::int64_t k = 1;; ++k) {
          std::int64_t s1 = k * (3 * k - 1);
          if (s1 > sn) break;
          std::int64_t s2 = k * (3 * k + 1);
          BigCount term = at(sn - s1) + at(sn - s2);
          if (k % 2 == 1) sum += term; else sum -= term;
        }
        return sum;
      }
    }
    return 0;
  }

  Kind kind_;
  std::vector<BigCount> values_;
};

/// c(n) = 2^(n-1).
inline BigCount c_count(std::uint64_t n) {
  if (n < 1) throw DomainError("c(n) is defined for n >= 1");
  BigCount out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, n - 1);
  return out;
}

/// Fibonacci by the linear recurrence F_0 = 0, F_1 = 1.
inline BigCount fibonacci(std::uint64_t n) {
  BigCount a = 0, b = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    BigCount next = a + b;
    a = std::move(b);
    b = std::move(next);
  }
  return a;
}

/// Q(n): compositions of n into odd parts.
inline BigCount Q_count(std::uint64_t n) {
  if (n < 1) throw DomainError("Q(n) is defined for n >= 1");
  return fibonacci(n);
}

inline BigCount p_recurrence(std::uint64_t n, MemoTable& table) {
  if (table.kind() != MemoTable::Kind::p) throw DomainError("p_recurrence needs a p table");
  return table.at(n);
}

inline BigCount q_recurrence(std::uint64_t n, MemoTable& table) {
  if (table.kind() != MemoTable::Kind::q) throw DomainError("q_recurrence needs a q table");
  return table.at(n);
}

namespace detail {

struct SharedTable {
  std::mutex mutex;
  MemoTable table;
  explicit SharedTable(MemoTable::Kind k) : table(k) {}
};

inline SharedTable& shared_table(MemoTable::Kind k) {
  static SharedTable p(MemoTable::Kind::p), q(MemoTable::Kind::q), fib(MemoTable::Kind::fib);
  switch (k) {
    case MemoTable::Kind::p: return p;
    case MemoTable::Kind::q: return q;
    case MemoTable::Kind::fib: return fib;
  }
  return p;
}

}  // namespace detail

/// p(n) via Euler's pentagonal recurrence, using a process-wide memo table.
inline BigCount p_recurrence(std::uint64_t n) {
  auto& shared = detail::shared_table(MemoTable::Kind::p);
  std::lock_guard lock(shared.mutex);
  return shared.table.at(n);
}

/// q(n) via the triangular-number recurrence, using a process-wide memo table.
inline BigCount q_recurrence(std::uint64_t n) {
  auto& shared = detail::shared_table(MemoTable::Kind::q);
  std::lock_guard lock(shared.mutex);
  return shared.table.at(n);
}

/// Left side of the q recurrence at n, evaluated from the given q values
/// with either shift scheme.  For the generalized shifts it equals
/// [n triangular] for every n.
inline BigCount q_recurrence_lhs(std::uint64_t n, const MemoTable& q, QShifts shifts) {
  const auto sn = static_cast<std::int64_t>(n);
  BigCount lhs = q.get(sn);
  for (std::int64_t k = 1;; ++k) {
    std::int64_t s1 = shifts == QShifts::generalized ? k * (3 * k - 1) : 3 * k - 1;
    std::int64_t s2 = shifts == QShifts::generalized ? k * (3 * k + 1) : 3 * k + 1;
    if (s1 > sn) break;
    BigCount term = q.get(sn - s1) + q.get(sn - s2);
    if (k % 2 == 1) lhs -= term; else lhs += term;
  }
  return lhs;
}

struct BinetReport {
  std::uint64_t n = 0;
  double float_estimate = 0.0;
  BigCount exact;
  double abs_error = 0.0;
  bool round_correct = false;
};

/// Binet's closed form evaluated in double precision, compared with F_n.
inline BinetReport binet_float(std::uint64_t n) {
  BinetReport r;
  r.n = n;
  const double s5 = std::sqrt(5.0);
  const double dn = static_cast<double>(n);
  r.float_estimate = (std::pow(1.0 + s5, dn) - std::pow(1.0 - s5, dn)) / (std::pow(2.0, dn) * s5);
  r.exact = fibonacci(n);
  if (!std::isfinite(r.float_estimate)) {
    r.abs_error = std::numeric_limits<double>::infinity();
    r.round_correct = false;
    return r;
  }
  BigCount rounded(std::nearbyint(r.float_estimate));
  r.round_correct = rounded == r.exact;

  // |estimate - exact| without first rounding exact to double.
  mpfr_t est, ex;
  mpfr_init2(est, 256);
  mpfr_init2(ex, 256);
  mpfr_set_d(est, r.float_estimate, MPFR_RNDN);
  mpfr_set_z(ex, r.exact.get_mpz_t(), MPFR_RNDN);
  mpfr_sub(est, est, ex, MPFR_RNDN);
  r.abs_error = std::fabs(mpfr_get_d(est, MPFR_RNDN));
  mpfr_clear(est);
  mpfr_clear(ex);
  return r;
}

/// Smallest n in [0, limit] where double Binet fails to round to F_n.
inline std::optional<std::uint64_t> first_binet_failure(std::uint64_t limit) {
  for (std::uint64_t n = 0; n <= limit; ++n) {
    if (!binet_float(n).round_correct) return n;
  }
  return std::nullopt;
}

}  // namespace fibcomp
