#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lforge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when an input string does not conform to the coefficient grammar.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Dimension/arity mismatch between operands.
class ShapeError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A declared mathematical precondition does not hold for the given data.
class PreconditionError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A theorem-guaranteed implication was violated. Always a bug.
class InternalInconsistencyError : public std::logic_error {
  using std::logic_error::logic_error;
};

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace lforge
