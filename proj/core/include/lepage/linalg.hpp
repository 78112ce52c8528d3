#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "lepage/expr.hpp"

namespace lepage {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
struct NumMatrix {
  int size = 0;
  std::vector<Complex> a;

  NumMatrix() = default;
  explicit NumMatrix(int n) : size(n), a(static_cast<std::size_t>(n) * n, Complex(0, 0)) {}
  Complex& at(int r, int c) { return a[static_cast<std::size_t>(r) * size + c]; }
  const Complex& at(int r, int c) const { return a[static_cast<std::size_t>(r) * size + c]; }
  static NumMatrix identity(int n);
};

/// Dense square matrix of symbolic entries. The exact paths (determinant,
/// Pfaffian, adjugate) are cofactor-based and limited to size <= 8.
struct ExprMatrix {
  int size = 0;
  std::vector<Expr> e;

  ExprMatrix() = default;
  explicit ExprMatrix(int n) : size(n), e(static_cast<std::size_t>(n) * n) {}
  Expr& at(int r, int c) { return e[static_cast<std::size_t>(r) * size + c]; }
  const Expr& at(int r, int c) const { return e[static_cast<std::size_t>(r) * size + c]; }
};

Complex det(const NumMatrix& A);

/// Numeric rank: singular values below 1e-9 times the largest count as zero.
int numeric_rank(const NumMatrix& A);

/// Scale-aware regularity test: |det A| > 1e-9 * prod over rows of the row
/// max-norm. A matrix with a zero row is never regular.
bool is_numerically_regular(const NumMatrix& A);

/// Solves A x = rhs by partial-pivoting LU with one step of iterative
/// refinement; relative residual <= 1e-10. Throws SingularMatrix.
std::vector<Complex> solve(const NumMatrix& A, const std::vector<Complex>& rhs);

NumMatrix inverse(const NumMatrix& A);  // SingularMatrix

/// Pfaffian of an antisymmetric even-sized matrix; Pf(A)^2 = det(A).
/// Throws NotAntisymmetric, OddSize.
Complex pfaffian(const NumMatrix& A);

/// Exact symbolic determinant (memoized cofactor expansion, size <= 8).
Expr det(const ExprMatrix& A);
Expr pfaffian(const ExprMatrix& A);
ExprMatrix adjugate(const ExprMatrix& A);  // adj(A) * A = det(A) * I
ExprMatrix transpose(const ExprMatrix& A);

NumMatrix eval_matrix(const ExprMatrix& A, const std::map<std::string, Complex>& env);

}  // namespace lepage
