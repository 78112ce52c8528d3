#pragma once

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lepage/rational.hpp"

namespace lepage {

enum class Kind { Const, Var, Param, Add, Mul, Div, IntPow, Func };
enum class FuncKind { Sin, Cos, Exp, Log };

const char* func_name(FuncKind f);

class Expr;
struct ExprNode;

/// Immutable symbolic scalar expression over exact complex-rational constants,
/// chart variables and named parameters. All operations are pure; values are
/// freely shared between threads.
///
/// Construction goes through the free functions below (add, mul, div, intpow,
/// func, ...) which perform light normalization: constant folding, 0/1
/// identities, flattening of nested sums/products, and collection of like
/// terms/factors. Unary minus is represented as multiplication by -1.
class Expr {
public:
  Expr();  // the zero expression

  static Expr constant(GaussianRational c);
  static Expr integer(long long k);
  static Expr rational(long long num, long long den);
  static Expr imaginary();  // the unit im
  static Expr var(std::string name);
  static Expr param(std::string name);

  const ExprNode& node() const { return *p_; }
  Kind kind() const;

  bool is_const() const;
  bool is_zero() const;
  bool is_one() const;
  const GaussianRational& const_value() const;  // requires kind() == Const

private:
  explicit Expr(std::shared_ptr<const ExprNode> p) : p_(std::move(p)) {}
  std::shared_ptr<const ExprNode> p_;
  friend Expr make_node(ExprNode&&);
};

struct ExprNode {
  Kind kind = Kind::Const;
  GaussianRational value;  // Const
  std::string name;        // Var / Param
  std::vector<Expr> kids;  // Add, Mul (n-ary); Div (2); IntPow, Func (1)
  long long expo = 0;      // IntPow
  FuncKind fn = FuncKind::Sin;
};

Expr add(std::vector<Expr> terms);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr neg(const Expr& a);
Expr mul(std::vector<Expr> factors);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);
Expr intpow(const Expr& base, long long e);
Expr func(FuncKind f, const Expr& arg);

inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }

/// Deterministic total order on expression trees (kind, then fields, then
/// children). Zero iff the trees are structurally identical.
int structural_compare(const Expr& a, const Expr& b);
inline bool struct_equal(const Expr& a, const Expr& b) { return structural_compare(a, b) == 0; }

struct ExprStructLess {
  bool operator()(const Expr& a, const Expr& b) const { return structural_compare(a, b) < 0; }
};

/// Exact partial derivative with respect to the variable named `v`.
/// Constants, parameters and unrelated variables differentiate to zero.
Expr differentiate(const Expr& e, const std::string& v);

/// Simultaneous substitution; right-hand sides are not re-substituted.
/// Matches Var and Param nodes by name.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

/// Double-precision evaluation. `env` must bind every variable and parameter
/// occurring in `e`. Throws UnboundName, DivisionByZero, DomainError.
std::complex<double> eval(const Expr& e, const std::map<std::string, std::complex<double>>& env);

/// Names of all variables/parameters occurring in `e`.
void collect_names(const Expr& e, std::set<std::string>& vars, std::set<std::string>& params);
std::set<std::string> all_names(const Expr& e);
bool depends_on(const Expr& e, const std::string& name);
bool depends_on_any(const Expr& e, const std::set<std::string>& names);

/// Precedence-aware printing; the output re-parses to a canonically equal
/// expression under the same chart/parameter tables.
std::string to_string(const Expr& e);

}  // namespace lepage
