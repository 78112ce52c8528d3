#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

#include "lepage/errors.hpp"

namespace lepage {

using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number with rational real and imaginary parts.
/// This is the constant type of the expression engine: parsed literals stay
/// exact, so symbolic identities can be decided without floating point.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r) : re(std::move(r)) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long long r) : re(r) {}
  GaussianRational(long long num, long long den) : re(Rational(num, den)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  bool is_real() const { return im == 0; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) throw DivisionByZero();
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  /// Total order used only for canonical term ordering.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  GaussianRational pow(long long e) const;

  std::complex<double> to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }
};

inline GaussianRational GaussianRational::pow(long long e) const {
  if (e < 0) return GaussianRational(1) / pow(-e);
  GaussianRational acc(1), base = *this;
  for (long long k = e; k > 0; k >>= 1) {
    if (k & 1) acc = acc * base;
    if (k > 1) base = base * base;
  }
  return acc;
}

std::string to_string(const Rational& r);

/// Prints "3", "-1/2", "im", "3/4*im", "(1/2+3/4*im)", ... — the grammar of
/// the expression language, so printed constants re-parse exactly.
std::string to_string(const GaussianRational& c);

}  // namespace lepage
