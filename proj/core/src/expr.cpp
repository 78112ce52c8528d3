#include "lepage/expr.hpp"

#include <algorithm>
#include <sstream>

#include "lepage/errors.hpp"

namespace lepage {

namespace {
const GaussianRational kZero{};
const GaussianRational kOne{1};
}  // namespace

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1)
    os << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

std::string to_string(const GaussianRational& c) {
  if (c.im == 0) return to_string(c.re);
  std::string imag = (c.im == 1)    ? "im"
                     : (c.im == -1) ? "-im"
                                    : to_string(c.im) + "*im";
  if (c.re == 0) return imag;
  std::string s = to_string(c.re);
  if (c.im > 0)
    s += " + " + imag;
  else
    s += " - " + (c.im == -1 ? std::string("im") : to_string(-c.im) + "*im");
  return "(" + s + ")";
}

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
  }
  return "?";
}

Expr make_node(ExprNode&& n) { return Expr(std::make_shared<const ExprNode>(std::move(n))); }

Expr::Expr() {
  static const std::shared_ptr<const ExprNode> zero = std::make_shared<const ExprNode>();
  p_ = zero;
}

Expr Expr::constant(GaussianRational c) {
  ExprNode n;
  n.kind = Kind::Const;
  n.value = std::move(c);
  return make_node(std::move(n));
}
Expr Expr::integer(long long k) { return constant(GaussianRational(k)); }
Expr Expr::rational(long long num, long long den) { return constant(GaussianRational(num, den)); }
Expr Expr::imaginary() { return constant(GaussianRational::i()); }
Expr Expr::var(std::string name) {
  ExprNode n;
  n.kind = Kind::Var;
  n.name = std::move(name);
  return make_node(std::move(n));
}
Expr Expr::param(std::string name) {
  ExprNode n;
  n.kind = Kind::Param;
  n.name = std::move(name);
  return make_node(std::move(n));
}

Kind Expr::kind() const { return p_->kind; }
bool Expr::is_const() const { return p_->kind == Kind::Const; }
bool Expr::is_zero() const { return is_const() && p_->value.is_zero(); }
bool Expr::is_one() const { return is_const() && p_->value.is_one(); }
const GaussianRational& Expr::const_value() const { return p_->value; }

int structural_compare(const Expr& a, const Expr& b) {
  const ExprNode& x = a.node();
  const ExprNode& y = b.node();
  if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind) ? -1 : 1;
  switch (x.kind) {
    case Kind::Const: {
      if (x.value == y.value) return 0;
      return x.value < y.value ? -1 : 1;
    }
    case Kind::Var:
    case Kind::Param:
      return x.name.compare(y.name);
    case Kind::IntPow:
      if (x.expo != y.expo) return x.expo < y.expo ? -1 : 1;
      break;
    case Kind::Func:
      if (x.fn != y.fn) return static_cast<int>(x.fn) < static_cast<int>(y.fn) ? -1 : 1;
      break;
    default:
      break;
  }
  if (x.kids.size() != y.kids.size()) return x.kids.size() < y.kids.size() ? -1 : 1;
  for (std::size_t k = 0; k < x.kids.size(); ++k) {
    int c = structural_compare(x.kids[k], y.kids[k]);
    if (c != 0) return c;
  }
  return 0;
}

namespace {

// Splits a simplified term into (constant coefficient, symbolic rest).
// The rest is the one-expression for pure constants.
std::pair<GaussianRational, Expr> split_coefficient(const Expr& t) {
  if (t.is_const()) return {t.const_value(), Expr::integer(1)};
  if (t.kind() == Kind::Mul && !t.node().kids.empty() && t.node().kids.front().is_const()) {
    const auto& kids = t.node().kids;
    GaussianRational c = kids.front().const_value();
    if (kids.size() == 2) return {c, kids[1]};
    ExprNode n;
    n.kind = Kind::Mul;
    n.kids.assign(kids.begin() + 1, kids.end());
    return {c, make_node(std::move(n))};
  }
  return {kOne, t};
}

// Splits a simplified factor into (base, integer exponent).
std::pair<Expr, long long> split_power(const Expr& f) {
  if (f.kind() == Kind::IntPow) return {f.node().kids[0], f.node().expo};
  return {f, 1};
}

Expr rebuild_term(const GaussianRational& c, const Expr& rest) {
  if (rest.is_one()) return Expr::constant(c);
  if (c.is_one()) return rest;
  // rest is never an Add here (constants distribute over sums in mul()).
  ExprNode n;
  n.kind = Kind::Mul;
  n.kids.push_back(Expr::constant(c));
  if (rest.kind() == Kind::Mul)
    for (const Expr& k : rest.node().kids) n.kids.push_back(k);
  else
    n.kids.push_back(rest);
  return make_node(std::move(n));
}

}  // namespace

Expr add(std::vector<Expr> terms) {
  GaussianRational const_sum;
  std::map<Expr, GaussianRational, ExprStructLess> collected;
  std::vector<Expr> queue = std::move(terms);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Expr t = queue[q];
    if (t.kind() == Kind::Add) {
      for (const Expr& k : t.node().kids) queue.push_back(k);
      continue;
    }
    if (t.is_const()) {
      const_sum = const_sum + t.const_value();
      continue;
    }
    auto [c, rest] = split_coefficient(t);
    collected[rest] = collected[rest] + c;
  }
  std::vector<Expr> out;
  if (!const_sum.is_zero()) out.push_back(Expr::constant(const_sum));
  for (const auto& [rest, c] : collected) {
    if (c.is_zero()) continue;
    out.push_back(rebuild_term(c, rest));
  }
  if (out.empty()) return Expr();
  if (out.size() == 1) return out.front();
  ExprNode n;
  n.kind = Kind::Add;
  n.kids = std::move(out);
  return make_node(std::move(n));
}

Expr add(const Expr& a, const Expr& b) { return add(std::vector<Expr>{a, b}); }
Expr sub(const Expr& a, const Expr& b) { return add(a, neg(b)); }
Expr neg(const Expr& a) { return mul(Expr::integer(-1), a); }

Expr mul(std::vector<Expr> factors) {
  GaussianRational const_prod{1};
  std::map<Expr, long long, ExprStructLess> powers;
  std::vector<Expr> order;  // bases in deterministic (structural) order via map below
  std::vector<Expr> queue = std::move(factors);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Expr f = queue[q];
    if (f.kind() == Kind::Mul) {
      for (const Expr& k : f.node().kids) queue.push_back(k);
      continue;
    }
    if (f.is_const()) {
      if (f.is_zero()) return Expr();
      const_prod = const_prod * f.const_value();
      continue;
    }
    auto [base, e] = split_power(f);
    powers[base] += e;
  }
  std::vector<Expr> out;
  for (const auto& [base, e] : powers) {
    if (e == 0) continue;
    out.push_back(e == 1 ? base : intpow(base, e));
  }
  if (out.empty()) return Expr::constant(const_prod);
  // distribute a constant over a single sum so that cancellation across
  // sums works structurally: c*(a+b) -> c*a + c*b
  if (out.size() == 1 && out.front().kind() == Kind::Add) {
    if (const_prod.is_one()) return out.front();
    std::vector<Expr> terms;
    for (const Expr& t : out.front().node().kids)
      terms.push_back(mul(Expr::constant(const_prod), t));
    return add(std::move(terms));
  }
  if (out.size() == 1 && const_prod.is_one()) return out.front();
  ExprNode n;
  n.kind = Kind::Mul;
  if (!const_prod.is_one()) n.kids.push_back(Expr::constant(const_prod));
  for (Expr& e : out) n.kids.push_back(std::move(e));
  if (n.kids.size() == 1) return n.kids.front();
  return make_node(std::move(n));
}

Expr mul(const Expr& a, const Expr& b) { return mul(std::vector<Expr>{a, b}); }

Expr div(const Expr& a, const Expr& b) {
  if (b.is_const()) {
    if (b.is_zero()) throw DivisionByZero();
    return mul(a, Expr::constant(kOne / b.const_value()));
  }
  if (a.is_zero()) return Expr();
  ExprNode n;
  n.kind = Kind::Div;
  n.kids = {a, b};
  return make_node(std::move(n));
}

Expr intpow(const Expr& base, long long e) {
  if (e == 0) return Expr::integer(1);
  if (e == 1) return base;
  if (base.is_const()) return Expr::constant(base.const_value().pow(e));
  if (base.kind() == Kind::IntPow) return intpow(base.node().kids[0], base.node().expo * e);
  if (base.kind() == Kind::Mul) {
    std::vector<Expr> fs;
    for (const Expr& k : base.node().kids) fs.push_back(intpow(k, e));
    return mul(std::move(fs));
  }
  if (base.kind() == Kind::Div) {
    if (e > 0) return div(intpow(base.node().kids[0], e), intpow(base.node().kids[1], e));
    return div(intpow(base.node().kids[1], -e), intpow(base.node().kids[0], -e));
  }
  ExprNode n;
  n.kind = Kind::IntPow;
  n.kids = {base};
  n.expo = e;
  return make_node(std::move(n));
}

Expr func(FuncKind f, const Expr& arg) {
  ExprNode n;
  n.kind = Kind::Func;
  n.fn = f;
  n.kids = {arg};
  return make_node(std::move(n));
}

Expr differentiate(const Expr& e, const std::string& v) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Const:
    case Kind::Param:
      return Expr();
    case Kind::Var:
      return n.name == v ? Expr::integer(1) : Expr();
    case Kind::Add: {
      std::vector<Expr> terms;
      for (const Expr& k : n.kids) terms.push_back(differentiate(k, v));
      return add(std::move(terms));
    }
    case Kind::Mul: {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        std::vector<Expr> fs;
        for (std::size_t j = 0; j < n.kids.size(); ++j)
          fs.push_back(i == j ? differentiate(n.kids[j], v) : n.kids[j]);
        terms.push_back(mul(std::move(fs)));
      }
      return add(std::move(terms));
    }
    case Kind::Div: {
      const Expr& a = n.kids[0];
      const Expr& b = n.kids[1];
      return div(sub(mul(differentiate(a, v), b), mul(a, differentiate(b, v))), intpow(b, 2));
    }
    case Kind::IntPow: {
      const Expr& b = n.kids[0];
      return mul({Expr::integer(n.expo), intpow(b, n.expo - 1), differentiate(b, v)});
    }
    case Kind::Func: {
      const Expr& a = n.kids[0];
      Expr da = differentiate(a, v);
      switch (n.fn) {
        case FuncKind::Sin: return mul(func(FuncKind::Cos, a), da);
        case FuncKind::Cos: return neg(mul(func(FuncKind::Sin, a), da));
        case FuncKind::Exp: return mul(func(FuncKind::Exp, a), da);
        case FuncKind::Log: return div(da, a);
      }
    }
  }
  return Expr();
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Const:
      return e;
    case Kind::Var:
    case Kind::Param: {
      auto it = bindings.find(n.name);
      return it == bindings.end() ? e : it->second;
    }
    case Kind::Add: {
      std::vector<Expr> kids;
      for (const Expr& k : n.kids) kids.push_back(substitute(k, bindings));
      return add(std::move(kids));
    }
    case Kind::Mul: {
      std::vector<Expr> kids;
      for (const Expr& k : n.kids) kids.push_back(substitute(k, bindings));
      return mul(std::move(kids));
    }
    case Kind::Div:
      return div(substitute(n.kids[0], bindings), substitute(n.kids[1], bindings));
    case Kind::IntPow:
      return intpow(substitute(n.kids[0], bindings), n.expo);
    case Kind::Func:
      return func(n.fn, substitute(n.kids[0], bindings));
  }
  return e;
}

namespace {
std::complex<double> cpow_int(std::complex<double> z, long long e) {
  if (e < 0) {
    if (z == std::complex<double>(0.0, 0.0)) throw DivisionByZero();
    return 1.0 / cpow_int(z, -e);
  }
  std::complex<double> acc(1.0, 0.0);
  for (long long k = e; k > 0; k >>= 1) {
    if (k & 1) acc *= z;
    if (k > 1) z *= z;
  }
  return acc;
}
}  // namespace

std::complex<double> eval(const Expr& e, const std::map<std::string, std::complex<double>>& env) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Const:
      return n.value.to_complex();
    case Kind::Var:
    case Kind::Param: {
      auto it = env.find(n.name);
      if (it == env.end()) throw UnboundName(n.name);
      return it->second;
    }
    case Kind::Add: {
      std::complex<double> s(0.0, 0.0);
      for (const Expr& k : n.kids) s += eval(k, env);
      return s;
    }
    case Kind::Mul: {
      std::complex<double> p(1.0, 0.0);
      for (const Expr& k : n.kids) p *= eval(k, env);
      return p;
    }
    case Kind::Div: {
      std::complex<double> den = eval(n.kids[1], env);
      if (den == std::complex<double>(0.0, 0.0)) throw DivisionByZero();
      return eval(n.kids[0], env) / den;
    }
    case Kind::IntPow:
      return cpow_int(eval(n.kids[0], env), n.expo);
    case Kind::Func: {
      std::complex<double> a = eval(n.kids[0], env);
      switch (n.fn) {
        case FuncKind::Sin: return std::sin(a);
        case FuncKind::Cos: return std::cos(a);
        case FuncKind::Exp: return std::exp(a);
        case FuncKind::Log:
          if (a == std::complex<double>(0.0, 0.0)) throw DomainError("log of zero");
          return std::log(a);
      }
    }
  }
  return {};
}

void collect_names(const Expr& e, std::set<std::string>& vars, std::set<std::string>& params) {
  const ExprNode& n = e.node();
  if (n.kind == Kind::Var) vars.insert(n.name);
  if (n.kind == Kind::Param) params.insert(n.name);
  for (const Expr& k : n.kids) collect_names(k, vars, params);
}

std::set<std::string> all_names(const Expr& e) {
  std::set<std::string> v, p;
  collect_names(e, v, p);
  v.insert(p.begin(), p.end());
  return v;
}

bool depends_on(const Expr& e, const std::string& name) {
  const ExprNode& n = e.node();
  if ((n.kind == Kind::Var || n.kind == Kind::Param) && n.name == name) return true;
  for (const Expr& k : n.kids)
    if (depends_on(k, name)) return true;
  return false;
}

bool depends_on_any(const Expr& e, const std::set<std::string>& names) {
  const ExprNode& n = e.node();
  if ((n.kind == Kind::Var || n.kind == Kind::Param) && names.count(n.name)) return true;
  for (const Expr& k : n.kids)
    if (depends_on_any(k, names)) return true;
  return false;
}

namespace {

// Precedence: Add < Mul/Div < unary sign < IntPow < atoms.
enum Prec { kAdd = 1, kMul = 2, kPow = 3, kAtom = 4 };

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::Add: return kAdd;
    case Kind::Mul:
    case Kind::Div: return kMul;
    case Kind::IntPow: return kPow;
    case Kind::Const: {
      const GaussianRational& c = e.const_value();
      bool plain = c.is_real() && c.re >= 0;
      return plain ? kAtom : kMul;  // "1/2", "-3", "(1+im)" behave like products
    }
    default: return kAtom;
  }
}

void print(const Expr& e, std::ostream& os, int parent_prec);

void print_wrapped(const Expr& e, std::ostream& os, int parent_prec) {
  if (precedence(e) < parent_prec) {
    os << "(";
    print(e, os, 0);
    os << ")";
  } else {
    print(e, os, parent_prec);
  }
}

// True when the term prints with a leading minus that Add can absorb.
bool negative_lead(const Expr& t, Expr& positive) {
  if (t.is_const() && t.const_value().is_real() && t.const_value().re < 0) {
    positive = Expr::constant(-t.const_value());
    return true;
  }
  if (t.kind() == Kind::Mul && t.node().kids.front().is_const()) {
    const GaussianRational& c = t.node().kids.front().const_value();
    if (c.is_real() && c.re < 0) {
      std::vector<Expr> kids = t.node().kids;
      kids.front() = Expr::constant(-c);
      positive = mul(std::move(kids));
      return true;
    }
  }
  return false;
}

void print(const Expr& e, std::ostream& os, int parent_prec) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Const:
      os << to_string(n.value);
      return;
    case Kind::Var:
    case Kind::Param:
      os << n.name;
      return;
    case Kind::Add: {
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i == 0) {
          print_wrapped(n.kids[i], os, kAdd);
          continue;
        }
        Expr pos;
        if (negative_lead(n.kids[i], pos)) {
          os << " - ";
          print_wrapped(pos, os, kAdd + 1);
        } else {
          os << " + ";
          print_wrapped(n.kids[i], os, kAdd + 1);
        }
      }
      return;
    }
    case Kind::Mul: {
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) os << "*";
        print_wrapped(n.kids[i], os, kMul + (i ? 1 : 0));
      }
      return;
    }
    case Kind::Div: {
      print_wrapped(n.kids[0], os, kMul);
      os << "/";
      print_wrapped(n.kids[1], os, kMul + 1);
      return;
    }
    case Kind::IntPow: {
      print_wrapped(n.kids[0], os, kPow + 1);
      os << "^";
      if (n.expo < 0)
        os << "(" << n.expo << ")";
      else
        os << n.expo;
      return;
    }
    case Kind::Func:
      os << func_name(n.fn) << "(";
      print(n.kids[0], os, 0);
      os << ")";
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(e, os, 0);
  return os.str();
}

}  // namespace lepage
