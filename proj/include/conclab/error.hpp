#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace conclab {

/// Invalid argument for an otherwise well-formed call (bad vertex, negative
/// entry, mismatched sizes).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An enumeration or eigen-solve would exceed its configured size budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what_arg, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error(what_arg), required_(required), budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// A documented precondition on the inputs does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Input magnitude would overflow an intermediate quantity.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// Configuration failed validation; `field()` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Report or config written by an incompatible artifact version.
class VersionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conclab
