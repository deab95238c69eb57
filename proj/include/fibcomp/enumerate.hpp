#pragma once

// Exhaustive generators for restricted compositions and partitions.
//
// These are the brute-force oracles the formulas are checked against, so
// they deliberately share no code with counting.hpp or genfun.hpp: every
// object is produced by depth-first search over part sequences.
//
// Order contract: compositions come out in lexicographic order of their part
// sequences, partitions in reverse-lexicographic order.  Streams are lazy.

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "fibcomp/core.hpp"
#include "fibcomp/error.hpp"

namespace fibcomp {

enum class CompositionClass { all, odd_parts, min_part_2, distinct_parts };

struct PartitionClass {
  enum class Kind { all, odd_parts, distinct_parts, distinct_exactly_ell };

  Kind kind = Kind::all;
  unsigned ell = 0;  // only meaningful for distinct_exactly_ell

  static PartitionClass all() { return {Kind::all, 0}; }
  static PartitionClass odd_parts() { return {Kind::odd_parts, 0}; }
  static PartitionClass distinct_parts() { return {Kind::distinct_parts, 0}; }
  static PartitionClass distinct_exactly(unsigned ell) { return {Kind::distinct_exactly_ell, ell}; }

  friend bool operator==(const PartitionClass&, const PartitionClass&) = default;
};

inline std::string to_string(CompositionClass c) {
  switch (c) {
    case CompositionClass::all: return "compositions:all";
    case CompositionClass::odd_parts: return "compositions:odd-parts";
    case CompositionClass::min_part_2: return "compositions:min-part-2";
    case CompositionClass::distinct_parts: return "compositions:distinct-parts";
  }
  return "compositions:?";
}

inline std::string to_string(const PartitionClass& c) {
  switch (c.kind) {
    case PartitionClass::Kind::all: return "partitions:all";
    case PartitionClass::Kind::odd_parts: return "partitions:odd-parts";
    case PartitionClass::Kind::distinct_parts: return "partitions:distinct-parts";
    case PartitionClass::Kind::distinct_exactly_ell:
      return "partitions:distinct-with-exactly-" + std::to_string(c.ell) + "-parts";
  }
  return "partitions:?";
}

namespace detail {

// Depth-first search over part sequences.  Candidates for the next part are
// tried in a fixed order (ascending for compositions, descending for
// partitions), which yields the lexicographic / reverse-lexicographic order.
class PartSearch {
 public:
  enum class Rule {
    comp_all,
    comp_odd,
    comp_min2,
    comp_distinct,
    part_all,
    part_odd,
    part_distinct,
    part_distinct_ell,
  };

  PartSearch(std::uint64_t n, Rule rule, unsigned ell = 0) : n_(n), remaining_(n), rule_(rule), ell_(ell) {}

  /// Advances to the next complete part sequence; false when exhausted.
  bool advance() {
    bool descend = !started_;
    started_ = true;
    if (done_) return false;
    while (true) {
      if (descend) {
        if (remaining_ == 0) {
          if (complete()) return true;
          descend = false;
          continue;
        }
        if (auto c = candidate(std::nullopt)) {
          push(*c);
        } else {
          descend = false;
        }
      } else {
        if (parts_.empty()) {
          done_ = true;
          return false;
        }
        Part last = pop();
        if (auto c = candidate(last)) {
          push(*c);
          descend = true;
        }
      }
    }
  }

  const std::vector<Part>& parts() const noexcept { return parts_; }

 private:
  bool ascending() const { return rule_ <= Rule::comp_distinct; }

  bool complete() const { return rule_ != Rule::part_distinct_ell || parts_.size() == ell_; }

  bool used(Part p) const {
    for (Part q : parts_) {
      if (q == p) return true;
    }
    return false;
  }

  bool allowed(Part p) const {
    switch (rule_) {
      case Rule::comp_all: return true;
      case Rule::comp_odd: return p % 2 == 1;
      case Rule::comp_min2: return p >= 2 && remaining_ - p != 1;
      case Rule::comp_distinct: return !used(p);
      case Rule::part_all: return true;
      case Rule::part_odd: return p % 2 == 1;
      case Rule::part_distinct: return true;
      case Rule::part_distinct_ell: return parts_.size() < ell_;
    }
    return false;
  }

  // Next candidate strictly after `after` in the search order, if any.
  std::optional<Part> candidate(std::optional<Part> after) const {
    if (remaining_ == 0) return std::nullopt;
    if (ascending()) {
      std::uint64_t p = after ? std::uint64_t{*after} + 1 : 1;
      for (; p <= remaining_; ++p) {
        if (allowed(static_cast<Part>(p))) return static_cast<Part>(p);
      }
      return std::nullopt;
    }
    std::uint64_t hi = remaining_;
    if (!parts_.empty()) {
      const bool strict = rule_ == Rule::part_distinct || rule_ == Rule::part_distinct_ell;
      std::uint64_t cap = strict ? std::uint64_t{parts_.back()} - 1 : parts_.back();
      hi = std::min(hi, cap);
    }
    if (after) hi = std::min<std::uint64_t>(hi, std::uint64_t{*after} - 1);
    for (std::uint64_t p = hi; p >= 1; --p) {
      if (allowed(static_cast<Part>(p))) return static_cast<Part>(p);
    }
    return std::nullopt;
  }

  void push(Part p) {
    parts_.push_back(p);
    remaining_ -= p;
  }

  Part pop() {
    Part p = parts_.back();
    parts_.pop_back();
    remaining_ += p;
    return p;
  }

  std::uint64_t n_;
  std::uint64_t remaining_;
  Rule rule_;
  unsigned ell_;
  std::vector<Part> parts_;
  bool started_ = false;
  bool done_ = false;
};

inline PartSearch::Rule rule_for(CompositionClass c) {
  switch (c) {
    case CompositionClass::all: return PartSearch::Rule::comp_all;
    case CompositionClass::odd_parts: return PartSearch::Rule::comp_odd;
    case CompositionClass::min_part_2: return PartSearch::Rule::comp_min2;
    case CompositionClass::distinct_parts: return PartSearch::Rule::comp_distinct;
  }
  return PartSearch::Rule::comp_all;
}

inline PartSearch::Rule rule_for(const PartitionClass& c) {
  switch (c.kind) {
    case PartitionClass::Kind::all: return PartSearch::Rule::part_all;
    case PartitionClass::Kind::odd_parts: return PartSearch::Rule::part_odd;
    case PartitionClass::Kind::distinct_parts: return PartSearch::Rule::part_distinct;
    case PartitionClass::Kind::distinct_exactly_ell: return PartSearch::Rule::part_distinct_ell;
  }
  return PartSearch::Rule::part_all;
}

// Input iterator shared by both generator types.
template <class Gen, class Value>
class GenIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = Value;
  using difference_type = std::ptrdiff_t;

  GenIterator() = default;
  explicit GenIterator(Gen* gen) : gen_(gen) { ++*this; }

  const Value& operator*() const { return *current_; }
  const Value* operator->() const { return &*current_; }
  GenIterator& operator++() {
    current_ = gen_->next();
    if (!current_) gen_ = nullptr;
    return *this;
  }
  void operator++(int) { ++*this; }
  friend bool operator==(const GenIterator& it, std::default_sentinel_t) { return it.gen_ == nullptr; }

 private:
  Gen* gen_ = nullptr;
  std::optional<Value> current_;
};

}  // namespace detail

/// Lazy stream of the compositions of n in a class, lexicographic order.
class CompositionGenerator {
 public:
  CompositionGenerator(std::uint64_t n, CompositionClass cls) : search_(check(n, cls), detail::rule_for(cls)) {}

  std::optional<Composition> next() {
    if (!search_.advance()) return std::nullopt;
    return Composition::from_positive_parts(search_.parts());
  }

  /// Advances without materializing a value.
  bool skip() { return search_.advance(); }

  auto begin() { return detail::GenIterator<CompositionGenerator, Composition>(this); }
  std::default_sentinel_t end() const { return {}; }

 private:
  static std::uint64_t check(std::uint64_t n, CompositionClass cls) {
    if (n < 1) throw DomainError("compositions are defined for n >= 1");
    if (cls == CompositionClass::min_part_2 && n < 2) {
      throw DomainError("compositions into parts greater than one need n >= 2");
    }
    return n;
  }

  detail::PartSearch search_;
};

/// Lazy stream of the partitions of n in a class, reverse-lexicographic order.
class PartitionGenerator {
 public:
  PartitionGenerator(std::uint64_t n, PartitionClass cls) : search_(n, detail::rule_for(cls), cls.ell) {}

  std::optional<Partition> next() {
    if (!search_.advance()) return std::nullopt;
    return Partition::from_sorted_parts(search_.parts());
  }

  bool skip() { return search_.advance(); }

  auto begin() { return detail::GenIterator<PartitionGenerator, Partition>(this); }
  std::default_sentinel_t end() const { return {}; }

 private:
  detail::PartSearch search_;
};

inline CompositionGenerator gen_compositions(std::uint64_t n, CompositionClass cls) { return {n, cls}; }
inline PartitionGenerator gen_partitions(std::uint64_t n, PartitionClass cls) { return {n, cls}; }

inline mpz_class count_by_enumeration(std::uint64_t n, CompositionClass cls) {
  CompositionGenerator gen(n, cls);
  mpz_class count = 0;
  while (gen.skip()) ++count;
  return count;
}

inline mpz_class count_by_enumeration(std::uint64_t n, PartitionClass cls) {
  PartitionGenerator gen(n, cls);
  mpz_class count = 0;
  while (gen.skip()) ++count;
  return count;
}

}  // namespace fibcomp
