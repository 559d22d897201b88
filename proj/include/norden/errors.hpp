#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace norden {

/// Operand dimensions do not line up (contractions, products, fits).
class ShapeError : public std::invalid_argument {
 public:
  explicit ShapeError(const std::string& what) : std::invalid_argument("shape: " + what) {}
};

/// Input is not a valid Lie algebra with Norden structure.
class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is valid but violates a hypothesis the requested machinery needs
/// (not lightlike, not radical transversal, not umbilical, ...).
class HypothesisFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A proved identity failed to hold exactly. Signals an engine bug.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace norden
