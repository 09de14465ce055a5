#pragma once

#include <stdexcept>
#include <string>

namespace matnorm {

/// Malformed argument: shape mismatch, non-finite entry, unknown identifier.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well-formed but the operation has no meaningful answer (e.g. the
/// dual witness of the zero matrix).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A certified lower bound exceeded a certified upper bound. Either a bug or a
/// couple that is not actually in the unit ball.
class InternalInconsistency : public std::logic_error {
 public:
  InternalInconsistency(const std::string& what, std::string details)
      : std::logic_error(what), details_(std::move(details)) {}

  const std::string& details() const noexcept { return details_; }

 private:
  std::string details_;
};

}  // namespace matnorm
