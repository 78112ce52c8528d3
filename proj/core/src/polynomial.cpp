#include "lepage/polynomial.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "lepage/errors.hpp"

namespace lepage {

Polynomial Polynomial::constant(GaussianRational c) {
  Polynomial p;
  if (!c.is_zero()) p.terms_[{}] = std::move(c);
  return p;
}

Polynomial Polynomial::generator(const std::string& name) {
  Polynomial p;
  p.gens_ = {name};
  p.terms_[{1}] = GaussianRational(1);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

GaussianRational Polynomial::constant_value() const {
  if (terms_.empty()) return {};
  return terms_.begin()->second;
}

long long Polynomial::total_degree() const {
  long long d = 0;
  for (const auto& [e, c] : terms_) {
    long long t = 0;
    for (int k : e) t += k;
    d = std::max(d, t);
  }
  return d;
}

namespace {

// Re-keys a term map onto a merged generator list.
std::vector<int> remap(const std::vector<int>& exps, const std::vector<int>& positions, std::size_t width) {
  std::vector<int> out(width, 0);
  for (std::size_t k = 0; k < exps.size(); ++k) out[positions[k]] = exps[k];
  return out;
}

std::vector<int> positions_in(const std::vector<std::string>& sub, const std::vector<std::string>& full) {
  std::vector<int> pos(sub.size());
  for (std::size_t k = 0; k < sub.size(); ++k)
    pos[k] = static_cast<int>(std::lower_bound(full.begin(), full.end(), sub[k]) - full.begin());
  return pos;
}

}  // namespace

void Polynomial::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  std::vector<char> used(gens_.size(), 0);
  for (const auto& [e, c] : terms_)
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] != 0) used[k] = 1;
  if (std::all_of(used.begin(), used.end(), [](char u) { return u != 0; })) return;
  std::vector<std::string> gens;
  std::vector<int> keep;
  for (std::size_t k = 0; k < gens_.size(); ++k)
    if (used[k]) {
      gens.push_back(gens_[k]);
      keep.push_back(static_cast<int>(k));
    }
  std::map<std::vector<int>, GaussianRational> terms;
  for (const auto& [e, c] : terms_) {
    std::vector<int> ne(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k) ne[k] = e[keep[k]];
    terms[std::move(ne)] = c;
  }
  gens_ = std::move(gens);
  terms_ = std::move(terms);
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  std::vector<std::string> gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  out.gens_ = gens;
  auto pa = positions_in(a.gens_, gens);
  auto pb = positions_in(b.gens_, gens);
  for (const auto& [e, c] : a.terms_) out.terms_[remap(e, pa, gens.size())] = c;
  for (const auto& [e, c] : b.terms_) {
    auto key = remap(e, pb, gens.size());
    auto it = out.terms_.find(key);
    if (it == out.terms_.end())
      out.terms_[key] = c;
    else
      it->second = it->second + c;
  }
  out.normalize();
  return out;
}

Polynomial operator-(const Polynomial& a) {
  Polynomial out = a;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  std::vector<std::string> gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  out.gens_ = gens;
  auto pa = positions_in(a.gens_, gens);
  auto pb = positions_in(b.gens_, gens);
  for (const auto& [ea, ca] : a.terms_) {
    auto ka = remap(ea, pa, gens.size());
    for (const auto& [eb, cb] : b.terms_) {
      auto key = ka;
      for (std::size_t k = 0; k < eb.size(); ++k) key[pb[k]] += eb[k];
      auto it = out.terms_.find(key);
      if (it == out.terms_.end())
        out.terms_[std::move(key)] = ca * cb;
      else
        it->second = it->second + ca * cb;
    }
  }
  out.normalize();
  return out;
}

Polynomial Polynomial::pow(long long e) const {
  Polynomial acc = Polynomial::constant(GaussianRational(1));
  Polynomial base = *this;
  for (long long k = e; k > 0; k >>= 1) {
    if (k & 1) acc = acc * base;
    if (k > 1) base = base * base;
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << lepage::to_string(c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      os << "*" << gens_[k];
      if (e[k] != 1) os << "^" << e[k];
    }
  }
  return os.str();
}

Polynomial canonical(const Expr& e) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Const:
      return Polynomial::constant(n.value);
    case Kind::Var:
    case Kind::Param:
      return Polynomial::generator(n.name);
    case Kind::Add: {
      Polynomial p;
      for (const Expr& k : n.kids) p = p + canonical(k);
      return p;
    }
    case Kind::Mul: {
      Polynomial p = Polynomial::constant(GaussianRational(1));
      for (const Expr& k : n.kids) p = p * canonical(k);
      return p;
    }
    case Kind::Div: {
      Polynomial den = canonical(n.kids[1]);
      if (!den.is_constant()) throw NotPolynomial("division by a non-constant");
      if (den.is_zero()) throw DivisionByZero();
      GaussianRational inv = GaussianRational(1) / den.constant_value();
      return canonical(n.kids[0]) * Polynomial::constant(inv);
    }
    case Kind::IntPow: {
      Polynomial base = canonical(n.kids[0]);
      if (n.expo >= 0) return base.pow(n.expo);
      if (!base.is_constant()) throw NotPolynomial("negative power of a non-constant");
      if (base.is_zero()) throw DivisionByZero();
      return Polynomial::constant(base.constant_value().pow(n.expo));
    }
    case Kind::Func:
      throw NotPolynomial(std::string(func_name(n.fn)) + " is not polynomial");
  }
  return {};
}

RationalForm canonical_rational(const Expr& e) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Const:
      return {Polynomial::constant(n.value), Polynomial::constant(GaussianRational(1))};
    case Kind::Var:
    case Kind::Param:
      return {Polynomial::generator(n.name), Polynomial::constant(GaussianRational(1))};
    case Kind::Add: {
      RationalForm acc{Polynomial(), Polynomial::constant(GaussianRational(1))};
      for (const Expr& k : n.kids) {
        RationalForm t = canonical_rational(k);
        acc = {acc.num * t.den + t.num * acc.den, acc.den * t.den};
      }
      return acc;
    }
    case Kind::Mul: {
      RationalForm acc{Polynomial::constant(GaussianRational(1)), Polynomial::constant(GaussianRational(1))};
      for (const Expr& k : n.kids) {
        RationalForm t = canonical_rational(k);
        acc = {acc.num * t.num, acc.den * t.den};
      }
      return acc;
    }
    case Kind::Div: {
      RationalForm a = canonical_rational(n.kids[0]);
      RationalForm b = canonical_rational(n.kids[1]);
      if (b.num.is_zero()) throw DivisionByZero();
      return {a.num * b.den, a.den * b.num};
    }
    case Kind::IntPow: {
      RationalForm b = canonical_rational(n.kids[0]);
      if (n.expo >= 0) return {b.num.pow(n.expo), b.den.pow(n.expo)};
      if (b.num.is_zero()) throw DivisionByZero();
      return {b.den.pow(-n.expo), b.num.pow(-n.expo)};
    }
    case Kind::Func:
      throw NotPolynomial(std::string(func_name(n.fn)) + " is not polynomial");
  }
  return {};
}

std::uint64_t& probabilistic_seed() {
  static std::uint64_t seed = 42;
  return seed;
}

namespace {

double unit_double(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
}

std::complex<double> random_point(std::mt19937_64& eng) {
  return {2.0 * unit_double(eng) - 1.0, 2.0 * unit_double(eng) - 1.0};
}

}  // namespace

EqualsResult equals(const Expr& e1, const Expr& e2) {
  Expr d = sub(e1, e2);
  if (d.is_const()) return {d.const_value().is_zero(), false};
  try {
    return {canonical(d).is_zero(), false};
  } catch (const NotPolynomial&) {
  } catch (const DivisionByZero&) {
  }
  try {
    RationalForm rf = canonical_rational(d);
    if (!rf.den.is_zero()) return {rf.num.is_zero(), false};
  } catch (const NotPolynomial&) {
  } catch (const DivisionByZero&) {
  }

  // Probabilistic fallback: 20 valid sample points, components uniform in
  // [-1,1]; equality iff max |e1-e2| <= 1e-9 * (1 + max |e1|).
  std::set<std::string> names = all_names(e1);
  for (const std::string& s : all_names(e2)) names.insert(s);
  std::mt19937_64 eng(probabilistic_seed());
  int collected = 0;
  double max_diff = 0.0;
  double max_e1 = 0.0;
  for (int attempt = 0; attempt < 400 && collected < 20; ++attempt) {
    std::map<std::string, std::complex<double>> env;
    for (const std::string& name : names) env[name] = random_point(eng);
    try {
      std::complex<double> v1 = eval(e1, env);
      std::complex<double> v2 = eval(e2, env);
      max_diff = std::max(max_diff, std::abs(v1 - v2));
      max_e1 = std::max(max_e1, std::abs(v1));
      ++collected;
    } catch (const Error&) {
      continue;  // singular sample (log 0, division by zero): draw another
    }
  }
  if (collected == 0) return {false, true};
  return {max_diff <= 1e-9 * (1.0 + max_e1), true};
}

}  // namespace lepage
