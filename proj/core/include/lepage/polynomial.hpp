#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lepage/expr.hpp"

namespace lepage {

/// Unique canonical form of a polynomial expression: a map from monomials
/// (exponent vectors over the sorted list of generator names) to exact
/// complex-rational coefficients. Variables and parameters are both
/// generators. Zero coefficients are never stored and the generator list
/// carries only names that actually occur, so two equal polynomials are
/// structurally identical.
class Polynomial {
public:
  Polynomial() = default;

  static Polynomial constant(GaussianRational c);
  static Polynomial generator(const std::string& name);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussianRational constant_value() const;  // requires is_constant()

  const std::vector<std::string>& generators() const { return gens_; }
  const std::map<std::vector<int>, GaussianRational>& terms() const { return terms_; }
  long long total_degree() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial pow(long long e) const;  // e >= 0

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.gens_ == b.gens_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const;

private:
  void normalize();  // drop zero coefficients and unused generators
  std::vector<std::string> gens_;                     // sorted
  std::map<std::vector<int>, GaussianRational> terms_;  // exponents aligned to gens_
};

/// Canonical polynomial form; throws NotPolynomial if the expression contains
/// a transcendental function or a division by a non-constant.
Polynomial canonical(const Expr& e);

/// Exact rational-function form num/den (no common-factor reduction); exists
/// whenever the expression is free of transcendental functions.
struct RationalForm {
  Polynomial num;
  Polynomial den;
};
RationalForm canonical_rational(const Expr& e);

struct EqualsResult {
  bool equal = false;
  bool probabilistic = false;  // true when decided by random evaluation
  explicit operator bool() const { return equal; }
};

/// Symbolic equality: exact via canonical (rational) forms when they exist,
/// otherwise probabilistic evaluation at 20 seeded random points with
/// tolerance 1e-9 * (1 + max |e1|).
EqualsResult equals(const Expr& e1, const Expr& e2);

/// Seed of the probabilistic-equality point sequence (library-level setting).
std::uint64_t& probabilistic_seed();

}  // namespace lepage
