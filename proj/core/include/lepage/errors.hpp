#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lepage {

/// Base class of every error thrown by the library. `code()` is a stable
/// machine-readable identifier; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

struct SyntaxError : Error {
  std::size_t position;
  SyntaxError(std::size_t pos, const std::string& msg)
      : Error("SyntaxError", msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

struct UnknownIdentifier : Error {
  std::string name;
  explicit UnknownIdentifier(const std::string& n)
      : Error("UnknownIdentifier", "unknown identifier '" + n + "'"), name(n) {}
};

struct NonIntegerExponent : Error {
  NonIntegerExponent() : Error("NonIntegerExponent", "exponent of '^' must be an integer literal") {}
};

struct UnboundName : Error {
  std::string name;
  explicit UnboundName(const std::string& n)
      : Error("UnboundName", "no value bound for '" + n + "'"), name(n) {}
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("DivisionByZero", "division by zero") {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error("DomainError", msg) {}
};

struct NotPolynomial : Error {
  explicit NotPolynomial(const std::string& msg = "expression has no polynomial canonical form")
      : Error("NotPolynomial", msg) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& msg) : Error("IndexOutOfRange", msg) {}
};

struct DimensionTooSmall : Error {
  explicit DimensionTooSmall(const std::string& msg) : Error("DimensionTooSmall", msg) {}
};

struct NotQuadraticInVelocities : Error {
  NotQuadraticInVelocities()
      : Error("NotQuadraticInVelocities",
              "Lagrangian is not polynomial of degree <= 2 in the jet variables") {}
};

struct NotAffine : Error {
  NotAffine() : Error("NotAffine", "operation requires a Lagrangian affine in the jet variables") {}
};

struct SizeLimitExceeded : Error {
  explicit SizeLimitExceeded(const std::string& msg) : Error("SizeLimitExceeded", msg) {}
};

struct SingularMatrix : Error {
  explicit SingularMatrix(const std::string& msg = "matrix is numerically singular")
      : Error("SingularMatrix", msg) {}
};

struct NotAntisymmetric : Error {
  NotAntisymmetric() : Error("NotAntisymmetric", "matrix is not antisymmetric") {}
};

struct OddSize : Error {
  OddSize() : Error("OddSize", "Pfaffian requires an even-sized matrix") {}
};

struct NewtonDivergence : Error {
  NewtonDivergence() : Error("NewtonDivergence", "Newton iteration for the inverse Legendre map diverged") {}
};

struct SearchFailed : Error {
  explicit SearchFailed(int tries)
      : Error("SearchFailed", "regularization search failed after " + std::to_string(tries) + " tries") {}
};

struct GridTooSmall : Error {
  explicit GridTooSmall(const std::string& msg) : Error("GridTooSmall", msg) {}
};

struct NotRegular : Error {
  explicit NotRegular(const std::string& msg) : Error("NotRegular", msg) {}
};

struct UnknownPreset : Error {
  explicit UnknownPreset(const std::string& n)
      : Error("UnknownPreset", "unknown preset '" + n + "'") {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error("IoError", msg) {}
};

struct SchemaError : Error {
  std::string path;
  SchemaError(const std::string& p, const std::string& msg)
      : Error("SchemaError", msg + " (field " + p + ")"), path(p) {}
};

}  // namespace lepage
