#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lepage/chart.hpp"
#include "lepage/expr.hpp"
#include "lepage/linalg.hpp"

namespace lepage {

/// First-order Lagrangian density L(x, y, y_j); contains no second jets.
struct GeneralLagrangian {
  Chart chart;
  Expr L;
  std::vector<std::string> params;
};

/// Coefficients of a Lagrangian at most quadratic in the jet variables:
/// L = a + b^j_s y^s_j + c^{jk}_{sv} y^s_j y^v_k, with a, b, c functions of
/// (x, y) only and c stored fully symmetrized (flat-symmetric matrix).
struct QuadraticLagrangian {
  Chart chart;
  Expr a;
  std::vector<Expr> b;  // size mn; b[flat(s,j)] = b^j_s
  std::vector<Expr> c;  // size (mn)^2, row-major; c[flat(s,j)][flat(v,k)] = c^{jk}_{sv}
  std::vector<std::string> params;

  const Expr& b_at(int sigma, int j) const { return b[chart.flat_index(sigma, j)]; }
  const Expr& c_at(int sigma, int j, int nu, int k) const {
    return c[static_cast<std::size_t>(chart.flat_index(sigma, j)) * chart.jet_count() +
             chart.flat_index(nu, k)];
  }
  bool affine() const;
  Expr reassemble() const;  // a + b.y + y.c.y
  GeneralLagrangian general() const { return {chart, reassemble(), params}; }
};

/// De Donder momenta and Hamiltonian of a Lagrangian (functions on J1).
struct DeDonderData {
  std::vector<Expr> momenta;  // flat (s,i) -> ptilde^i_s
  Expr hamiltonian;
};

struct RegularityReport {
  Complex det{0, 0};
  int rank = 0;
  bool regular = false;
};

/// Splits L into quadratic coefficients; throws NotQuadraticInVelocities when
/// L is not polynomial of degree <= 2 in the jets.
QuadraticLagrangian extract_quadratic(const GeneralLagrangian& L);

/// Matrix of second jet-derivatives of L in flat ordering (symmetric).
ExprMatrix velocity_hessian(const GeneralLagrangian& L);

/// Determinant, numeric rank, and scale-aware regularity verdict of the
/// velocity Hessian evaluated at a jet point.
RegularityReport standard_regularity_report(const GeneralLagrangian& L, const JetPoint& pt,
                                            const std::map<std::string, Complex>& param_values = {});

DeDonderData dedonder(const GeneralLagrangian& L);

/// Formal total derivative D_i = d/dx^i + y^v_i d/dy^v + y^v_{ij} d/dy^v_j,
/// producing expressions on the symmetric second jet.
Expr total_derivative(const Chart& chart, const Expr& e, int i);

/// Euler-Lagrange expressions E_s = dL/dy^s - D_i(dL/dy^s_i).
std::vector<Expr> euler_lagrange_exprs(const GeneralLagrangian& L);

/// Substitutes a field section y^s = s^s(x) (expressions in the x-variables)
/// and its derivatives into the Euler-Lagrange expressions; the result is
/// identically zero iff the section solves the equations.
std::vector<Expr> el_residual_on_section(const GeneralLagrangian& L, const std::vector<Expr>& fields);

/// Substitution map sending each field/jet/second-jet coordinate to the
/// section expression or its x-derivatives.
std::map<std::string, Expr> section_substitution(const Chart& chart, const std::vector<Expr>& fields);

}  // namespace lepage
