#include "lepage/parser.hpp"

#include <cctype>
#include <set>

#include "lepage/errors.hpp"

namespace lepage {

namespace {

class Parser {
public:
  Parser(const std::string& text, const Chart& chart, const std::vector<std::string>& params)
      : s_(text), chart_(chart), params_(params.begin(), params.end()) {}

  Expr run() {
    Expr e = expression();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError(pos_, "unexpected trailing input");
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("expected '") + c + "'");
  }

  Expr expression() {
    Expr e = term();
    for (;;) {
      if (accept('+'))
        e = add(e, term());
      else if (accept('-'))
        e = sub(e, term());
      else
        return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*'))
        e = mul(e, unary());
      else if (accept('/'))
        e = div(e, unary());
      else
        return e;
    }
  }

  Expr unary() {
    if (accept('-')) return neg(unary());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) return intpow(base, exponent());
    return base;
  }

  long long exponent() {
    skip_ws();
    if (accept('(')) {
      long long e = exponent();
      expect(')');
      if (accept('^')) e = ipow(e, exponent());
      return e;
    }
    bool negative = accept('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) throw NonIntegerExponent();
    if (pos_ < s_.size() && (s_[pos_] == '.' || std::isalpha(static_cast<unsigned char>(s_[pos_]))))
      throw NonIntegerExponent();
    long long v = std::stoll(s_.substr(start, pos_ - start));
    if (negative) v = -v;
    if (accept('^')) v = ipow(v, exponent());  // right-associative towers
    return v;
  }

  static long long ipow(long long b, long long e) {
    if (e < 0) throw NonIntegerExponent();
    long long acc = 1;
    for (long long k = 0; k < e; ++k) acc *= b;
    return acc;
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    Rational value;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t frac_start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string digits = s_.substr(start, frac_start - 1 - start) + s_.substr(frac_start, pos_ - frac_start);
      if (digits.empty()) throw SyntaxError(start, "malformed number");
      Rational den = 1;
      for (std::size_t k = 0; k < pos_ - frac_start; ++k) den *= 10;
      value = Rational(boost::multiprecision::cpp_int(digits)) / den;
    } else {
      if (pos_ == start) throw SyntaxError(start, "malformed number");
      value = Rational(boost::multiprecision::cpp_int(s_.substr(start, pos_ - start)));
    }
    return Expr::constant(GaussianRational(value));
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "im") return Expr::imaginary();
    if (name == "sin" || name == "cos" || name == "exp" || name == "log") {
      expect('(');
      Expr arg = expression();
      expect(')');
      FuncKind f = name == "sin"   ? FuncKind::Sin
                   : name == "cos" ? FuncKind::Cos
                   : name == "exp" ? FuncKind::Exp
                                   : FuncKind::Log;
      return func(f, arg);
    }
    if (chart_.knows(name)) return Expr::var(name);
    if (params_.count(name)) return Expr::param(name);
    throw UnknownIdentifier(name);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  const Chart& chart_;
  std::set<std::string> params_;
};

}  // namespace

Expr parse(const std::string& text, const Chart& chart, const std::vector<std::string>& params) {
  return Parser(text, chart, params).run();
}

}  // namespace lepage
