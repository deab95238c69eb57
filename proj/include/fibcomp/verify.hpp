#pragma once

// Invariant batteries behind `fibcomp verify`.  Each check walks its range
// in ascending order and stops at the first failure, so the reported
// counterexample is the smallest one.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "fibcomp/analytic.hpp"
#include "fibcomp/bijection.hpp"
#include "fibcomp/core.hpp"
#include "fibcomp/counting.hpp"
#include "fibcomp/enumerate.hpp"
#include "fibcomp/genfun.hpp"

namespace fibcomp {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string counterexample;  // empty when passed
  std::string note;            // optional extra information
};

struct VerifyReport {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  void print(std::ostream& out) const {
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << suite << "." << c.name << " cases=" << c.cases;
      if (!c.note.empty()) out << " " << c.note;
      if (!c.passed) out << " counterexample: " << c.counterexample;
      out << "\n";
    }
  }
};

namespace detail {

// Runs `body` for each case; body returns an error string on failure.
class CheckRunner {
 public:
  explicit CheckRunner(std::string name) { result_.name = std::move(name); }

  bool operator()(const std::function<std::optional<std::string>()>& body) {
    if (!result_.passed) return false;
    ++result_.cases;
    if (auto err = body()) {
      result_.passed = false;
      result_.counterexample = *err;
      return false;
    }
    return true;
  }

  bool ok() const { return result_.passed; }
  CheckResult& result() { return result_; }

 private:
  CheckResult result_;
};

inline std::optional<std::string> fail_if(bool bad, const std::string& what) {
  if (bad) return what;
  return std::nullopt;
}

// Every maximal run of zeros has even length.
inline bool zero_runs_even(const BitSeq& b) {
  std::size_t run = 0;
  for (std::size_t i = 0; i <= b.size(); ++i) {
    if (i < b.size() && !b[i]) {
      ++run;
    } else {
      if (run % 2 != 0) return false;
      run = 0;
    }
  }
  return true;
}

}  // namespace detail

inline VerifyReport verify_codec(std::uint64_t max_n) {
  VerifyReport rep{"codec", {}};
  detail::CheckRunner roundtrip("roundtrip"), involution("conjugate-involution"), part_count("conjugate-part-count"),
      odd_runs("odd-parts-iff-even-zero-runs"), dual("odd-parts-iff-conjugate-odd-length-even-index-ones");
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    for (const auto& c : gen_compositions(n, CompositionClass::all)) {
      const auto bits = to_bitseq(c);
      const auto conj = conjugate(c);
      roundtrip([&] { return detail::fail_if(from_bitseq(bits) != c || bits.size() != n - 1, to_string(c)); });
      involution([&] { return detail::fail_if(conjugate(conj) != c, to_string(c)); });
      part_count([&] { return detail::fail_if(conj.ell() != n - c.ell() + 1, to_string(c)); });
      odd_runs([&] { return detail::fail_if(c.all_odd() != detail::zero_runs_even(bits), to_string(c)); });
      dual([&] {
        bool even_ones = conj.ell() % 2 == 1;
        for (std::size_t i = 1; i < conj.ell(); i += 2) even_ones = even_ones && conj[i] == 1;
        return detail::fail_if(c.all_odd() != even_ones, to_string(c));
      });
    }
  }
  for (auto* r : {&roundtrip, &involution, &part_count, &odd_runs, &dual}) rep.checks.push_back(r->result());
  return rep;
}

inline VerifyReport verify_bijection(std::uint64_t max_n) {
  VerifyReport rep{"bijection", {}};
  detail::CheckRunner roundtrip("roundtrip"), image("image-equals-target"), card("cardinality-fibonacci"),
      parity("parity-lemma"), trace("trace-invariants");
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    std::set<std::vector<Part>> images;
    std::uint64_t sources = 0;
    for (const auto& a : gen_compositions(n, CompositionClass::odd_parts)) {
      ++sources;
      const auto t = trace_forward(a);
      images.insert(t.c.parts());
      roundtrip([&] { return detail::fail_if(gt1_to_odd(t.c) != a, to_string(a)); });
      parity([&] { return detail::fail_if(a.n() % 2 != a.ell() % 2, to_string(a)); });
      trace([&]() -> std::optional<std::string> {
        const auto& b = t.b.parts();
        bool ok = t.a_conj == conjugate(a) && t.a_conj.ell() % 2 == 1 && b.back() == t.a_conj.back() &&
                  t.c.n() == n + 1 && t.c.ell() == t.b.ell() && t.c.back() == t.b.back() + 1;
        for (std::size_t i = 0; i + 1 < b.size(); ++i) ok = ok && b[i] >= 2 && t.c[i] == b[i];
        return detail::fail_if(!ok, to_string(a));
      });
    }
    std::set<std::vector<Part>> targets;
    for (const auto& c : gen_compositions(n + 1, CompositionClass::min_part_2)) targets.insert(c.parts());
    image([&] {
      return detail::fail_if(images != targets || images.size() != sources,
                             "n=" + std::to_string(n) + " image size " + std::to_string(images.size()) +
                                 " vs target " + std::to_string(targets.size()));
    });
    card([&] {
      const auto f = fibonacci(n);
      return detail::fail_if(mpz_class(sources) != f || mpz_class(targets.size()) != f,
                             "n=" + std::to_string(n) + " sources=" + std::to_string(sources) +
                                 " F_n=" + f.get_str());
    });
  }
  for (auto* r : {&roundtrip, &image, &card, &parity, &trace}) rep.checks.push_back(r->result());
  return rep;
}

inline VerifyReport verify_counts(std::uint64_t max_n) {
  VerifyReport rep{"counts", {}};
  MemoTable p(MemoTable::Kind::p), q(MemoTable::Kind::q);
  detail::CheckRunner c_all("c-equals-enumeration"), q_odd("Q-equals-odd-compositions"),
      q_min2("Q-equals-min-part-2-compositions"), p_enum("p-recurrence-equals-enumeration"),
      q_enum("q-recurrence-equals-odd-and-distinct-enumeration"), residual("q-recurrence-residual"),
      binet_ok("binet-rounds-correctly-to-30"), binet_fail("binet-fails-somewhere-to-100");
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    const auto ns = std::to_string(n);
    if (n >= 1) {
      c_all([&] { return detail::fail_if(c_count(n) != count_by_enumeration(n, CompositionClass::all), "n=" + ns); });
      q_odd([&] {
        return detail::fail_if(Q_count(n) != count_by_enumeration(n, CompositionClass::odd_parts), "n=" + ns);
      });
      q_min2([&] {
        return detail::fail_if(Q_count(n) != count_by_enumeration(n + 1, CompositionClass::min_part_2), "n=" + ns);
      });
    }
    p_enum([&] { return detail::fail_if(p.at(n) != count_by_enumeration(n, PartitionClass::all()), "n=" + ns); });
    q_enum([&] {
      const auto& v = q.at(n);
      return detail::fail_if(v != count_by_enumeration(n, PartitionClass::odd_parts()) ||
                                 v != count_by_enumeration(n, PartitionClass::distinct_parts()),
                             "n=" + ns);
    });
  }
  const std::uint64_t residual_max = std::max<std::uint64_t>(max_n, 2000);
  q.extend_to(residual_max);
  for (std::uint64_t n = 0; n <= residual_max; ++n) {
    residual([&] {
      const auto lhs = q_recurrence_lhs(n, q, QShifts::generalized);
      return detail::fail_if(lhs != (is_triangular(n) ? 1 : 0), "n=" + std::to_string(n) + " lhs=" + lhs.get_str());
    });
  }
  for (std::uint64_t n = 0; n <= 30; ++n) {
    binet_ok([&] { return detail::fail_if(!binet_float(n).round_correct, "n=" + std::to_string(n)); });
  }
  const auto first = first_binet_failure(100);
  binet_fail([&] { return detail::fail_if(!first.has_value(), "no failure for n <= 100"); });
  if (first) binet_fail.result().note = "smallest-failing-n=" + std::to_string(*first);
  binet_fail.result().cases = 101;
  for (auto* r : {&c_all, &q_odd, &q_min2, &p_enum, &q_enum, &residual, &binet_ok, &binet_fail}) {
    rep.checks.push_back(r->result());
  }
  return rep;
}

inline VerifyReport verify_genfun(std::uint64_t max_n) {
  VerifyReport rep{"genfun", {}};
  MemoTable p(MemoTable::Kind::p);
  const auto pgf = partition_gf(max_n);
  detail::CheckRunner p_coeff("partition-gf-equals-p"), euler("odd-product-equals-distinct-product"),
      pent("partition-gf-times-euler-product-is-one"), comp("compositions-gf-equals-c"),
      dcomp("distinct-compositions-gf-equals-enumeration"), dsum("distinct-compositions-gf-equals-ell-sum");
  for (std::uint64_t n = 0; n <= max_n; ++n) {
    p_coeff([&] {
      return detail::fail_if(pgf[n] != p.at(n) || pgf[n] != count_by_enumeration(n, PartitionClass::all()),
                             "n=" + std::to_string(n));
    });
  }
  const auto odd = odd_parts_gf(max_n), dist = distinct_parts_gf(max_n);
  euler([&] { return detail::fail_if(odd != dist, "order " + std::to_string(max_n)); });
  pent([&] {
    return detail::fail_if(series_mul(pgf, euler_product(max_n)) != TruncatedSeries::one(max_n),
                           "order " + std::to_string(max_n));
  });
  if (max_n >= 1) {
    const auto cgf = compositions_gf(max_n);
    for (std::uint64_t n = 1; n <= max_n; ++n) {
      comp([&] { return detail::fail_if(cgf[n] != c_count(n), "n=" + std::to_string(n)); });
    }
  }
  const auto dgf = distinct_compositions_gf(max_n);
  for (std::uint64_t n = 0; n <= max_n && n <= 20; ++n) {
    dcomp([&] {
      mpz_class expected = n == 0 ? mpz_class(1) : count_by_enumeration(n, CompositionClass::distinct_parts);
      return detail::fail_if(dgf[n] != expected, "n=" + std::to_string(n));
    });
    dsum([&] {
      mpz_class total = 0;
      for (std::size_t ell = 0; ell * (ell + 1) / 2 <= n; ++ell) {
        total += factorial(ell) * count_by_enumeration(n, PartitionClass::distinct_exactly(static_cast<unsigned>(ell)));
      }
      return detail::fail_if(dgf[n] != total, "n=" + std::to_string(n));
    });
  }
  for (auto* r : {&p_coeff, &euler, &pent, &comp, &dcomp, &dsum}) rep.checks.push_back(r->result());
  return rep;
}

inline VerifyReport verify_analytic(std::uint64_t max_n, unsigned threads = 1) {
  VerifyReport rep{"analytic", {}};
  MemoTable p(MemoTable::Kind::p), q(MemoTable::Kind::q);
  detail::CheckRunner recip("dedekind-reciprocity"), denom("dedekind-12k-integral"), rp("rademacher-equals-p"),
      hq("hagis-equals-q");
  for (std::uint64_t k = 2; k <= 30; ++k) {
    for (std::uint64_t h = 1; h < k; ++h) {
      if (std::gcd(h, k) != 1) continue;
      recip([&] {
        ExactRational lhs = dedekind_s(h, k) + dedekind_s(k % h, h);
        const long hl = static_cast<long>(h), kl = static_cast<long>(k);
        ExactRational rhs = ExactRational(-1, 4) +
                            (ExactRational(hl, kl) + ExactRational(kl, hl) + ExactRational(1, hl * kl)) / ExactRational(12);
        return detail::fail_if(!(lhs == rhs), "(h,k)=(" + std::to_string(h) + "," + std::to_string(k) + ")");
      });
    }
    for (std::uint64_t h = 0; h < k; ++h) {
      if (std::gcd(h, k) != 1) continue;
      denom([&] {
        ExactRational v = dedekind_s(h, k) * ExactRational(12 * static_cast<long>(k));
        return detail::fail_if(!v.is_integer(), "(h,k)=(" + std::to_string(h) + "," + std::to_string(k) + ")");
      });
    }
  }
  SeriesOptions opts;
  opts.threads = threads;
  for (std::uint64_t n = 1; n <= max_n; ++n) {
    rp([&] {
      auto r = rademacher_p(n, opts);
      return detail::fail_if(!r.certified || r.rounded != p.at(n),
                             "n=" + std::to_string(n) + " got " + r.rounded.get_str() +
                                 (r.certified ? "" : " (uncertified)"));
    });
    hq([&] {
      auto r = hagis_q(n, opts);
      return detail::fail_if(!r.certified || r.rounded != q.at(n),
                             "n=" + std::to_string(n) + " got " + r.rounded.get_str() +
                                 (r.certified ? "" : " (uncertified)"));
    });
  }
  for (auto* r : {&recip, &denom, &rp, &hq}) rep.checks.push_back(r->result());
  return rep;
}

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"codec", "bijection", "counts", "genfun", "analytic"};
  return names;
}

/// Runs a named suite; throws DomainError for an unknown name.
inline VerifyReport verify_suite(const std::string& name, std::uint64_t max_n, unsigned threads = 1) {
  if (name == "codec") return verify_codec(max_n);
  if (name == "bijection") return verify_bijection(max_n);
  if (name == "counts") return verify_counts(max_n);
  if (name == "genfun") return verify_genfun(max_n);
  if (name == "analytic") return verify_analytic(max_n, threads);
  throw DomainError("unknown verify suite '" + name + "'");
}

}  // namespace fibcomp
