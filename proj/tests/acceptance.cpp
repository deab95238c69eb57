// Acceptance runner.  `acceptance` runs every criterion; `acceptance N` runs
// criterion N only.  One PASS/FAIL line per criterion; exit status is the
// number of failures (capped at 1).

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fibcomp/cli.hpp"
#include "fibcomp/fibcomp.hpp"

using namespace fibcomp;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require(Outcome& o, bool condition, const std::string& what) {
  if (!condition && o.passed) {
    o.passed = false;
    o.detail = what;
  }
}

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome criterion_1() {
  Outcome o;
  auto start = Clock::now();
  std::ostringstream out, err;
  int code = cli::run({"fibcomp", "map", "--odd-to-gt1", "1+1+1+9+1+1+5+3"}, out, err);
  std::ostringstream tout, terr;
  int tcode = cli::run({"fibcomp", "map", "--odd-to-gt1", "1+1+1+9+1+1+5+3", "--trace"}, tout, terr);
  double elapsed = seconds_since(start);
  require(o, code == 0 && out.str() == "5+2+2+2+5+2+3+2\n", "map output was '" + out.str() + "'");
  require(o, tcode == 0 && tout.str().find("a'=4+1+1+1+1+1+1+1+4+1+1+1+2+1+1\n") != std::string::npos, "trace a' mismatch");
  require(o, tout.str().find("b=5+2+2+2+5+2+3+1\n") != std::string::npos, "trace b mismatch");
  require(o, elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  if (o.passed) o.detail = "worked example reproduced in " + std::to_string(elapsed) + " s";
  return o;
}

Outcome criterion_2() {
  Outcome o;
  auto start = Clock::now();
  for (std::uint64_t n = 1; n <= 18 && o.passed; ++n) {
    std::set<Composition> image, target;
    std::uint64_t domain = 0;
    for (const auto& a : gen_compositions(n, CompositionClass::odd_parts)) {
      ++domain;
      auto c = odd_to_gt1(a);
      require(o, gt1_to_odd(c) == a, "roundtrip fails for " + to_string(a));
      image.insert(c);
    }
    for (const auto& c : gen_compositions(n + 1, CompositionClass::min_part_2)) target.insert(c);
    require(o, image == target, "image differs from target at n=" + std::to_string(n));
    require(o, image.size() == domain, "not injective at n=" + std::to_string(n));
    require(o, mpz_class(domain) == fibonacci(n) && mpz_class(target.size()) == fibonacci(n),
            "size differs from F_n at n=" + std::to_string(n));
  }
  double elapsed = seconds_since(start);
  require(o, elapsed < 60.0, "took " + std::to_string(elapsed) + " s");
  if (o.passed) o.detail = "bijection verified for 1 <= n <= 18 in " + std::to_string(elapsed) + " s";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  for (std::uint64_t n = 1; n <= 16; ++n) {
    require(o, c_count(n) == count_by_enumeration(n, CompositionClass::all), "mismatch at n=" + std::to_string(n));
  }
  std::set<std::string> listed;
  for (const auto& c : gen_compositions(4, CompositionClass::all)) listed.insert(to_string(c));
  std::set<std::string> expected{"4", "3+1", "1+3", "2+2", "2+1+1", "1+2+1", "1+1+2", "1+1+1+1"};
  require(o, c_count(4) == 8 && listed == expected, "the eight compositions of 4 differ");
  if (o.passed) o.detail = "c_count matches enumeration for 1 <= n <= 16";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  for (std::uint64_t n = 0; n <= 40; ++n) {
    require(o, count_by_enumeration(n, PartitionClass::odd_parts()) == count_by_enumeration(n, PartitionClass::distinct_parts()),
            "odd != distinct at n=" + std::to_string(n));
  }
  std::vector<std::string> odd, distinct;
  for (const auto& p : gen_partitions(8, PartitionClass::odd_parts())) odd.push_back(to_string(p));
  for (const auto& p : gen_partitions(8, PartitionClass::distinct_parts())) distinct.push_back(to_string(p));
  require(o, odd == std::vector<std::string>{"7+1", "5+3", "5+1+1+1", "3+3+1+1", "3+1+1+1+1+1", "1+1+1+1+1+1+1+1"},
          "odd-part list for 8 differs");
  require(o, distinct == std::vector<std::string>{"8", "7+1", "6+2", "5+3", "5+2+1", "4+3+1"}, "distinct-part list for 8 differs");
  require(o, q_recurrence(8) == 6, "q(8) != 6");
  if (o.passed) o.detail = "odd-part and distinct-part counts agree for 0 <= n <= 40; q(8) = 6";
  return o;
}

Outcome criterion_5() {
  Outcome o;
  auto gf = partition_gf(40);
  for (std::uint64_t n = 0; n <= 40; ++n) {
    auto p = p_recurrence(n);
    require(o, p == count_by_enumeration(n, PartitionClass::all()), "enumeration mismatch at n=" + std::to_string(n));
    require(o, p == gf[n], "generating function mismatch at n=" + std::to_string(n));
  }
  if (o.passed) o.detail = "p_recurrence matches enumeration and partition_gf for 0 <= n <= 40";
  return o;
}

Outcome criterion_6() {
  Outcome o;
  MemoTable q(MemoTable::Kind::q);
  q.extend_to(2000);
  for (std::uint64_t n = 0; n <= 2000; ++n) {
    mpz_class expected = is_triangular(n) ? 1 : 0;
    require(o, q_recurrence_lhs(n, q, QShifts::generalized) == expected, "corrected residual wrong at n=" + std::to_string(n));
  }
  std::optional<std::uint64_t> first_printed_failure;
  for (std::uint64_t n = 0; n <= 2000 && !first_printed_failure; ++n) {
    if (q_recurrence_lhs(n, q, QShifts::printed) != (is_triangular(n) ? 1 : 0)) first_printed_failure = n;
  }
  const std::string where = first_printed_failure ? std::to_string(*first_printed_failure) : "none";
  require(o, first_printed_failure && *first_printed_failure <= 4,
          "corrected shifts hold to 2000, but printed shifts first fail at n=" + where + ", not by n=4");
  if (o.passed) o.detail = "corrected shifts hold to 2000; printed shifts first fail at n=" + where;
  return o;
}

Outcome criterion_7() {
  Outcome o;
  auto start = Clock::now();
  SeriesOptions opts;
  opts.threads = worker_threads();
  MemoTable p(MemoTable::Kind::p), q(MemoTable::Kind::q);
  p.extend_to(10000);
  q.extend_to(500);
  int escalated = 0;
  for (std::uint64_t n = 1; n <= 500 && o.passed; ++n) {
    auto rp = rademacher_p(n, opts);
    auto rq = hagis_q(n, opts);
    require(o, rp.certified && rp.rounded == p.at(n), "p(" + std::to_string(n) + ") not certified or wrong");
    require(o, rq.certified && rq.rounded == q.at(n), "q(" + std::to_string(n) + ") not certified or wrong");
    escalated += (rp.escalations > 0) + (rq.escalations > 0);
  }
  double sweep = seconds_since(start);
  require(o, sweep < 600.0, "sweep took " + std::to_string(sweep) + " s");
  std::string stretch = "skipped";
  if (o.passed) {
    auto s = Clock::now();
    auto r = rademacher_p(10000, opts);
    require(o, r.certified && r.rounded == p.at(10000), "stretch p(10000) disagrees with the recurrence");
    stretch = "p(10000) agrees in " + std::to_string(seconds_since(s)) + " s";
  }
  if (o.passed) {
    o.detail = "1 <= n <= 500 certified for p and q in " + std::to_string(sweep) + " s (" + std::to_string(escalated) +
               " escalations); " + stretch;
  }
  return o;
}

Outcome criterion_8() {
  Outcome o;
  auto gf = distinct_compositions_gf(20);
  require(o, gf[0] == 1, "coefficient 0 is not 1");
  for (std::uint64_t n = 1; n <= 20; ++n) {
    require(o, gf[n] == count_by_enumeration(n, CompositionClass::distinct_parts), "mismatch at n=" + std::to_string(n));
  }
  require(o, gf[6] == 11, "coefficient 6 is not 11");
  if (o.passed) o.detail = "distinct_compositions_gf matches enumeration for 0 <= n <= 20";
  return o;
}

Outcome criterion_9() {
  Outcome o;
  auto first = first_binet_failure(100);
  require(o, first.has_value(), "double-precision Binet rounds correctly for every n <= 100");
  if (first) {
    auto r = binet_float(*first);
    require(o, !r.round_correct && r.exact == fibonacci(*first), "inconsistent report at n=" + std::to_string(*first));
    if (o.passed) {
      std::ostringstream d;
      d << "smallest-failing-n=" << *first << " (float " << std::fixed << r.float_estimate << " vs F_n "
        << r.exact.get_str() << ")";
      o.detail = d.str();
    }
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                                                       criterion_6, criterion_7, criterion_8, criterion_9};
  std::vector<int> ids;
  if (argc > 1) {
    int id = std::atoi(argv[1]);
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::cerr << "usage: acceptance [1-" << criteria.size() << "]\n";
      return 2;
    }
    ids.push_back(id);
  } else {
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) ids.push_back(i);
  }
  int failures = 0;
  for (int id : ids) {
    Outcome o;
    try {
      o = criteria[static_cast<std::size_t>(id - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << id << ": " << o.detail << std::endl;
    failures += !o.passed;
  }
  return failures == 0 ? 0 : 1;
}
