#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fibcomp {

/// Raised when an argument violates an operation's precondition.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A DomainError attributable to one part of a composition (1-based index).
class PartError : public DomainError {
 public:
  PartError(std::size_t index, std::uint64_t value, const std::string& what)
      : DomainError("part " + std::to_string(index) + " (= " + std::to_string(value) + ") " + what),
        index_(index),
        value_(value) {}

  std::size_t index() const noexcept { return index_; }
  std::uint64_t value() const noexcept { return value_; }

 private:
  std::size_t index_;
  std::uint64_t value_;
};

}  // namespace fibcomp
