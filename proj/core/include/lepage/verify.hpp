#pragma once

#include <string>
#include <vector>

#include "lepage/hamilton.hpp"
#include "lepage/legendre.hpp"

namespace lepage {

/// An exact field solution registered with a system, with parameter values
/// that make it solve the Euler-Lagrange equations.
struct RegisteredSolution {
  std::string name;
  std::vector<Expr> fields;
  std::map<std::string, GaussianRational> bindings;
};

struct SolutionVerdict {
  std::string name;
  double max_el = 0.0;
  double max_p2 = 0.0;
  bool pass = false;
};

struct EquivalenceReport {
  std::vector<SolutionVerdict> solutions;
  bool lemma_identities_ok = false;  // momenta/Hamiltonian vs the dedonderized Lagrangian
  bool closed = false;
  bool satellite_null_ok = false;    // satellite has vanishing EL expressions (when closed)
  bool el_equivalence_ok = false;    // EL(L) == EL(L - satellite) exactly (when closed)
  bool pass = false;
};

/// Bundled equivalence checks: per-solution residual maxima at 50 seeded
/// probe points in [0,1]^n (pass threshold 1e-10), the exact momentum and
/// Hamiltonian identities against the dedonderized Lagrangian, the closedness
/// verdict, and (when closed) the null-satellite and Euler-Lagrange
/// equivalence verdicts. Throws NotRegular when the system fails the
/// regularity test at seeded probe points.
EquivalenceReport equivalence_suite(const LepageanSystem& sys,
                                    const std::vector<RegisteredSolution>& solutions);

/// Uniform complex-valued field samples on [0,1]^2 (n = 2 only).
struct GridSection {
  int n1 = 0;  // nodes along x1, >= 5
  int n2 = 0;  // nodes along x2, >= 5
  std::vector<std::vector<Complex>> fields;  // [m][n1*n2], row-major in (j,k)

  double h1() const { return 1.0 / (n1 - 1); }
  double h2() const { return 1.0 / (n2 - 1); }
  Complex at(int sigma, int j, int k) const {
    return fields[sigma - 1][static_cast<std::size_t>(j) * n2 + k];
  }
};

GridSection sample_grid(const Chart& chart, const std::vector<Expr>& fields,
                        const std::map<std::string, Complex>& param_env, int n1, int n2);

struct GridReport {
  double sup_norm = 0.0;
  double order_estimate = 0.0;  // NaN when the grid cannot be coarsened
};

/// Samples the Legendre map on second-order finite-difference jets and
/// evaluates the reduced Hamilton-equation residuals with central stencils on
/// the interior nodes. The order estimate compares the sup norm against the
/// 2x-coarsened grid. Requires a reduced system on an n = 2 chart.
GridReport grid_residual(const P2System& p2, const GridSection& gs);

}  // namespace lepage
