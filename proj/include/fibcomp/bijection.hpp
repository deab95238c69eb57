#pragma once

// Bijection between compositions of n into odd parts and compositions of
// n + 1 into parts greater than one.
//
// Forward:  a  --conjugate-->  a'  --pair-sum-->  b  --last+1-->  c
//
// a' has an odd number of parts and every even-indexed part equals 1, so
// summing a'_{2i-1} + a'_{2i} and carrying the final part gives b, whose
// parts are all >= 2 except possibly the last.  Bumping the last part of b
// finishes the map.  The inverse undoes the steps in reverse order; the
// reduced last part is carried unsplit because it is a''s final part.

#include <string>
#include <vector>

#include "fibcomp/core.hpp"
#include "fibcomp/error.hpp"

namespace fibcomp {

struct BijectionTrace {
  Composition a;       // odd-part input
  Composition a_conj;  // conjugate of a
  Composition b;       // adjacent pairs of a_conj summed, last part carried
  Composition c;       // b with its last part increased by one

  /// Four lines "a=...", "a'=...", "b=...", "c=..." in canonical "+" form.
  std::string to_text() const {
    return "a=" + to_string(a) + "\na'=" + to_string(a_conj) + "\nb=" + to_string(b) + "\nc=" + to_string(c) + "\n";
  }
};

namespace detail {

inline void require_odd_parts(const Composition& a) {
  for (std::size_t i = 0; i < a.ell(); ++i) {
    if (a[i] % 2 == 0) throw PartError(i + 1, a[i], "is even; expected a composition into odd parts");
  }
}

inline void require_parts_gt1(const Composition& c) {
  for (std::size_t i = 0; i < c.ell(); ++i) {
    if (c[i] < 2) throw PartError(i + 1, c[i], "is 1; expected a composition into parts greater than one");
  }
}

}  // namespace detail

inline BijectionTrace trace_forward(const Composition& a) {
  detail::require_odd_parts(a);
  Composition a_conj = conjugate(a);
  const auto& ap = a_conj.parts();
  // a_conj has n - ell + 1 parts, an odd count since n and ell share parity.
  std::vector<Part> b;
  b.reserve(ap.size() / 2 + 1);
  for (std::size_t i = 0; i + 1 < ap.size(); i += 2) b.push_back(ap[i] + ap[i + 1]);
  b.push_back(ap.back());
  std::vector<Part> c = b;
  c.back() += 1;
  return BijectionTrace{a, std::move(a_conj), Composition::from_positive_parts(std::move(b)),
                        Composition::from_positive_parts(std::move(c))};
}

inline Composition odd_to_gt1(const Composition& a) { return trace_forward(a).c; }

inline Composition gt1_to_odd(const Composition& c) {
  detail::require_parts_gt1(c);
  const auto& cp = c.parts();
  std::vector<Part> a_conj;
  a_conj.reserve(2 * cp.size());
  for (std::size_t i = 0; i + 1 < cp.size(); ++i) {
    a_conj.push_back(cp[i] - 1);
    a_conj.push_back(1);
  }
  a_conj.push_back(cp.back() - 1);
  return conjugate(Composition::from_positive_parts(std::move(a_conj)));
}

}  // namespace fibcomp
