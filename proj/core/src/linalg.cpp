#include "lepage/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <functional>

#include "lepage/errors.hpp"
#include "lepage/polynomial.hpp"

namespace lepage {

namespace {

Eigen::MatrixXcd to_eigen(const NumMatrix& A) {
  Eigen::MatrixXcd M(A.size, A.size);
  for (int r = 0; r < A.size; ++r)
    for (int c = 0; c < A.size; ++c) M(r, c) = A.at(r, c);
  return M;
}

double row_norm_product(const NumMatrix& A) {
  double prod = 1.0;
  for (int r = 0; r < A.size; ++r) {
    double mx = 0.0;
    for (int c = 0; c < A.size; ++c) mx = std::max(mx, std::abs(A.at(r, c)));
    prod *= mx;
  }
  return prod;
}

}  // namespace

NumMatrix NumMatrix::identity(int n) {
  NumMatrix I(n);
  for (int k = 0; k < n; ++k) I.at(k, k) = Complex(1, 0);
  return I;
}

Complex det(const NumMatrix& A) {
  if (A.size == 0) return {1, 0};
  return to_eigen(A).partialPivLu().determinant();
}

int numeric_rank(const NumMatrix& A) {
  if (A.size == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(A));
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  if (smax == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > 1e-9 * smax) ++rank;
  return rank;
}

bool is_numerically_regular(const NumMatrix& A) {
  return std::abs(det(A)) > 1e-9 * row_norm_product(A);
}

std::vector<Complex> solve(const NumMatrix& A, const std::vector<Complex>& rhs) {
  if (static_cast<int>(rhs.size()) != A.size) throw SizeLimitExceeded("rhs size mismatch");
  if (!is_numerically_regular(A)) throw SingularMatrix();
  Eigen::MatrixXcd M = to_eigen(A);
  Eigen::VectorXcd b(A.size);
  for (int k = 0; k < A.size; ++k) b(k) = rhs[k];
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  Eigen::VectorXcd x = lu.solve(b);
  x += lu.solve(b - M * x);  // one step of residual correction
  std::vector<Complex> out(A.size);
  for (int k = 0; k < A.size; ++k) out[k] = x(k);
  return out;
}

NumMatrix inverse(const NumMatrix& A) {
  if (!is_numerically_regular(A)) throw SingularMatrix();
  Eigen::MatrixXcd M = to_eigen(A).inverse();
  NumMatrix out(A.size);
  for (int r = 0; r < A.size; ++r)
    for (int c = 0; c < A.size; ++c) out.at(r, c) = M(r, c);
  return out;
}

namespace {

template <typename Entry, typename Zero>
Entry pfaffian_expand(int size, const std::vector<int>& live,
                      const std::function<Entry(int, int)>& at, const Zero& zero,
                      const std::function<Entry(const Entry&, const Entry&)>& mulf,
                      const std::function<Entry(const Entry&, const Entry&)>& addf,
                      const std::function<Entry(const Entry&)>& negf,
                      const std::function<Entry()>& one) {
  if (live.empty()) return one();
  Entry acc = zero;
  int i = live[0];
  for (std::size_t jj = 1; jj < live.size(); ++jj) {
    int j = live[jj];
    std::vector<int> rest;
    for (std::size_t k = 1; k < live.size(); ++k)
      if (k != jj) rest.push_back(live[k]);
    Entry sub = pfaffian_expand(size, rest, at, zero, mulf, addf, negf, one);
    Entry term = mulf(at(i, j), sub);
    if (jj % 2 == 0) term = negf(term);  // alternating sign along the first row
    acc = addf(acc, term);
  }
  return acc;
}

}  // namespace

Complex pfaffian(const NumMatrix& A) {
  if (A.size % 2 != 0) throw OddSize();
  double scale = 0.0;
  for (const Complex& v : A.a) scale = std::max(scale, std::abs(v));
  for (int r = 0; r < A.size; ++r)
    for (int c = 0; c < A.size; ++c)
      if (std::abs(A.at(r, c) + A.at(c, r)) > 1e-12 * (1.0 + scale)) throw NotAntisymmetric();
  std::vector<int> live(A.size);
  for (int k = 0; k < A.size; ++k) live[k] = k;
  std::function<Complex(int, int)> at = [&](int r, int c) { return A.at(r, c); };
  return pfaffian_expand<Complex>(
      A.size, live, at, Complex(0, 0),
      [](const Complex& a, const Complex& b) { return a * b; },
      [](const Complex& a, const Complex& b) { return a + b; },
      [](const Complex& a) { return -a; }, []() { return Complex(1, 0); });
}

namespace {

// Memoized Laplace expansion over column masks; rows are consumed top-down.
Expr det_memo(const ExprMatrix& A, int row, unsigned mask, std::map<unsigned, Expr>& memo) {
  if (row == A.size) return Expr::integer(1);
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  std::vector<Expr> terms;
  int sign = 1;
  for (int c = 0; c < A.size; ++c) {
    if (!(mask & (1u << c))) continue;
    const Expr& entry = A.at(row, c);
    if (!entry.is_zero()) {
      Expr sub = det_memo(A, row + 1, mask & ~(1u << c), memo);
      Expr term = mul(entry, sub);
      terms.push_back(sign < 0 ? neg(term) : term);
    }
    sign = -sign;
  }
  Expr result = add(std::move(terms));
  memo.emplace(mask, result);
  return result;
}

}  // namespace

Expr det(const ExprMatrix& A) {
  if (A.size > 8) throw SizeLimitExceeded("symbolic determinant limited to size 8");
  if (A.size == 0) return Expr::integer(1);
  std::map<unsigned, Expr> memo;
  return det_memo(A, 0, (1u << A.size) - 1, memo);
}

Expr pfaffian(const ExprMatrix& A) {
  if (A.size > 8) throw SizeLimitExceeded("symbolic Pfaffian limited to size 8");
  if (A.size % 2 != 0) throw OddSize();
  for (int r = 0; r < A.size; ++r)
    for (int c = r; c < A.size; ++c)
      if (!equals(A.at(r, c), neg(A.at(c, r))).equal) throw NotAntisymmetric();
  std::vector<int> live(A.size);
  for (int k = 0; k < A.size; ++k) live[k] = k;
  std::function<Expr(int, int)> at = [&](int r, int c) { return A.at(r, c); };
  return pfaffian_expand<Expr>(
      A.size, live, at, Expr(),
      [](const Expr& a, const Expr& b) { return mul(a, b); },
      [](const Expr& a, const Expr& b) { return add(a, b); },
      [](const Expr& a) { return neg(a); }, []() { return Expr::integer(1); });
}

ExprMatrix adjugate(const ExprMatrix& A) {
  if (A.size > 8) throw SizeLimitExceeded("symbolic adjugate limited to size 8");
  ExprMatrix out(A.size);
  for (int r = 0; r < A.size; ++r) {
    for (int c = 0; c < A.size; ++c) {
      ExprMatrix minor(A.size - 1);
      for (int i = 0, mi = 0; i < A.size; ++i) {
        if (i == r) continue;
        for (int j = 0, mj = 0; j < A.size; ++j) {
          if (j == c) continue;
          minor.at(mi, mj) = A.at(i, j);
          ++mj;
        }
        ++mi;
      }
      Expr cof = det(minor);
      if ((r + c) % 2 != 0) cof = neg(cof);
      out.at(c, r) = cof;  // adjugate is the transposed cofactor matrix
    }
  }
  return out;
}

ExprMatrix transpose(const ExprMatrix& A) {
  ExprMatrix out(A.size);
  for (int r = 0; r < A.size; ++r)
    for (int c = 0; c < A.size; ++c) out.at(c, r) = A.at(r, c);
  return out;
}

NumMatrix eval_matrix(const ExprMatrix& A, const std::map<std::string, Complex>& env) {
  NumMatrix out(A.size);
  for (int r = 0; r < A.size; ++r)
    for (int c = 0; c < A.size; ++c) out.at(r, c) = eval(A.at(r, c), env);
  return out;
}

}  // namespace lepage
