#pragma once

// Compositions, partitions and the MacMahon bit-sequence codec.
//
// A composition of n with l parts is drawn as n unit lengths with a node
// between two units whenever a part ends there.  Reading the n-1 gaps left
// to right gives the MacMahon bit sequence: 1 where a node sits, 0 otherwise.
// Complementing that sequence gives the conjugate composition.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fibcomp/error.hpp"

namespace fibcomp {

using Part = std::uint32_t;

class Composition;
class BitSeq;

Composition from_bitseq(const BitSeq& bits);

/// An ordered sequence of positive parts.  Always nonempty.
class Composition {
 public:
  const std::vector<Part>& parts() const noexcept { return parts_; }
  std::uint64_t n() const noexcept { return n_; }
  std::size_t ell() const noexcept { return parts_.size(); }

  Part operator[](std::size_t i) const { return parts_[i]; }
  Part front() const { return parts_.front(); }
  Part back() const { return parts_.back(); }

  bool all_odd() const {
    return std::all_of(parts_.begin(), parts_.end(), [](Part p) { return p % 2 == 1; });
  }
  bool all_greater_than_one() const {
    return std::all_of(parts_.begin(), parts_.end(), [](Part p) { return p >= 2; });
  }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition& a, const Composition& b) { return a.parts_ <=> b.parts_; }

  /// Validating factory; rejects empty input and parts < 1.
  static Composition make(std::span<const std::int64_t> parts) {
    if (parts.empty()) throw DomainError("a composition needs at least one part");
    std::vector<Part> out;
    out.reserve(parts.size());
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 1) {
        throw DomainError("part " + std::to_string(i + 1) + " (= " + std::to_string(parts[i]) +
                          ") is not a positive integer");
      }
      if (static_cast<std::uint64_t>(parts[i]) > std::numeric_limits<Part>::max()) {
        throw DomainError("part " + std::to_string(i + 1) + " is too large");
      }
      sum += static_cast<std::uint64_t>(parts[i]);
      if (sum > std::numeric_limits<Part>::max()) throw DomainError("composition sum is too large");
      out.push_back(static_cast<Part>(parts[i]));
    }
    return Composition(std::move(out), sum);
  }

  /// Builds from parts already known to be positive.  Internal fast path.
  static Composition from_positive_parts(std::vector<Part> parts) {
    std::uint64_t sum = 0;
    for (Part p : parts) sum += p;
    return Composition(std::move(parts), sum);
  }

 private:
  Composition(std::vector<Part> parts, std::uint64_t n) : parts_(std::move(parts)), n_(n) {}

  std::vector<Part> parts_;
  std::uint64_t n_ = 0;
};

inline Composition make_composition(std::span<const std::int64_t> parts) { return Composition::make(parts); }

inline Composition make_composition(std::initializer_list<std::int64_t> parts) {
  return Composition::make(std::span<const std::int64_t>(parts.begin(), parts.size()));
}

/// A binary sequence; length L encodes a composition of L + 1.
class BitSeq {
 public:
  BitSeq() = default;
  explicit BitSeq(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto& b : bits_) b = b ? 1 : 0;
  }

  /// Parses a string of '0'/'1' characters.
  static BitSeq parse(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] != '0' && text[i] != '1') {
        throw DomainError("bit sequence character " + std::to_string(i + 1) + " is not 0 or 1");
      }
      bits.push_back(text[i] == '1');
    }
    return BitSeq(std::move(bits));
  }

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  std::size_t ones() const { return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1)); }
  std::size_t zeros() const { return size() - ones(); }

  BitSeq complement() const {
    std::vector<std::uint8_t> out(bits_.size());
    std::transform(bits_.begin(), bits_.end(), out.begin(), [](std::uint8_t b) -> std::uint8_t { return b ^ 1; });
    return BitSeq(std::move(out));
  }

  std::string to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
    return s;
  }

  friend bool operator==(const BitSeq&, const BitSeq&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Weakly decreasing positive parts.  The empty partition of 0 is valid.
class Partition {
 public:
  Partition() = default;

  static Partition make(std::span<const std::int64_t> parts) {
    std::vector<Part> out;
    out.reserve(parts.size());
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 1) {
        throw DomainError("part " + std::to_string(i + 1) + " (= " + std::to_string(parts[i]) +
                          ") is not a positive integer");
      }
      if (i > 0 && parts[i] > parts[i - 1]) {
        throw DomainError("partition parts must be weakly decreasing (part " + std::to_string(i + 1) + ")");
      }
      if (static_cast<std::uint64_t>(parts[i]) > std::numeric_limits<Part>::max()) {
        throw DomainError("part " + std::to_string(i + 1) + " is too large");
      }
      sum += static_cast<std::uint64_t>(parts[i]);
      out.push_back(static_cast<Part>(parts[i]));
    }
    return Partition(std::move(out), sum);
  }

  static Partition make(std::initializer_list<std::int64_t> parts) {
    return make(std::span<const std::int64_t>(parts.begin(), parts.size()));
  }

  /// Internal fast path for generators that already maintain the invariant.
  static Partition from_sorted_parts(std::vector<Part> parts) {
    std::uint64_t sum = 0;
    for (Part p : parts) sum += p;
    return Partition(std::move(parts), sum);
  }

  const std::vector<Part>& parts() const noexcept { return parts_; }
  std::uint64_t n() const noexcept { return n_; }
  std::size_t ell() const noexcept { return parts_.size(); }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

 private:
  Partition(std::vector<Part> parts, std::uint64_t n) : parts_(std::move(parts)), n_(n) {}

  std::vector<Part> parts_;
  std::uint64_t n_ = 0;
};

/// Bit i is 1 iff a node separates unit i and unit i+1 (0-indexed, left to right).
inline BitSeq to_bitseq(const Composition& c) {
  std::vector<std::uint8_t> bits;
  bits.reserve(c.n() - 1);
  const auto& parts = c.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    bits.insert(bits.end(), parts[i] - 1, 0);
    if (i + 1 < parts.size()) bits.push_back(1);
  }
  return BitSeq(std::move(bits));
}

inline Composition from_bitseq(const BitSeq& bits) {
  std::vector<Part> parts;
  Part run = 1;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      parts.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  parts.push_back(run);
  return Composition::from_positive_parts(std::move(parts));
}

inline Composition conjugate(const Composition& c) { return from_bitseq(to_bitseq(c).complement()); }

/// MacMahon graph: one "−" per unit and a "·" at every node.
inline std::string render_graph(const Composition& c) {
  static constexpr std::string_view kUnit = "−";
  static constexpr std::string_view kNode = "·";
  std::string out;
  const auto& parts = c.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += kNode;
    for (Part u = 0; u < parts[i]; ++u) out += kUnit;
  }
  return out;
}

// Canonical text form: parts joined by '+', no whitespace.

inline std::string to_string(std::span<const Part> parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += '+';
    out += std::to_string(parts[i]);
  }
  return out;
}

inline std::string to_string(const Composition& c) { return to_string(std::span<const Part>(c.parts())); }
inline std::string to_string(const Partition& p) { return to_string(std::span<const Part>(p.parts())); }
inline std::string to_string(const BitSeq& b) { return b.to_string(); }

namespace detail {

inline std::vector<std::int64_t> parse_parts(std::string_view text) {
  if (text.empty()) throw DomainError("empty composition text");
  std::vector<std::int64_t> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find('+', pos);
    std::string_view tok = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    if (tok.empty()) throw DomainError("empty part at position " + std::to_string(parts.size() + 1));
    if (tok.size() > 1 && tok[0] == '0') {
      throw DomainError("part " + std::to_string(parts.size() + 1) + " has a leading zero");
    }
    if (tok.size() > 10) throw DomainError("part " + std::to_string(parts.size() + 1) + " is too large");
    std::int64_t v = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9') {
        throw DomainError("unexpected character '" + std::string(1, ch) + "' in part " +
                          std::to_string(parts.size() + 1));
      }
      v = v * 10 + (ch - '0');
    }
    parts.push_back(v);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return parts;
}

}  // namespace detail

/// Parses the canonical "a1+a2+..." form.
inline Composition parse_composition(std::string_view text) {
  auto parts = detail::parse_parts(text);
  return make_composition(parts);
}

inline Partition parse_partition(std::string_view text) {
  if (text.empty()) return Partition{};
  auto parts = detail::parse_parts(text);
  return Partition::make(parts);
}

}  // namespace fibcomp
