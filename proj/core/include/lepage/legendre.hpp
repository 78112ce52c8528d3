#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lepage/chart.hpp"
#include "lepage/expr.hpp"
#include "lepage/gtensor.hpp"
#include "lepage/lagrangian.hpp"
#include "lepage/linalg.hpp"

namespace lepage {

/// Declared parameters of a problem together with their default values.
struct ParamSpec {
  std::vector<std::string> names;
  std::map<std::string, GaussianRational> defaults;

  std::map<std::string, Complex> env(const std::map<std::string, Complex>& overrides = {}) const;
};

/// A Lagrangian paired with a 2-contact coefficient tensor on a shared chart;
/// the data of the at-most-2-contact Lepagean equivalent. `quadratic` is
/// populated when the Lagrangian admits the degree-<=2 coefficient split.
struct LepageanSystem {
  GeneralLagrangian L;
  std::optional<QuadraticLagrangian> quadratic;
  GTensor g;
  ParamSpec params;

  const Chart& chart() const { return L.chart; }
};

LepageanSystem make_system(GeneralLagrangian L, GTensor g, ParamSpec params = {});

/// K[(s,i),(v,j)] = d2L/dy^s_i dy^v_j - 4 g^{ij}_{sv}; invertibility of K is
/// the regularity condition that forces Hamilton extremals to be holonomic.
ExprMatrix regularity_matrix(const LepageanSystem& sys);

bool is_regular_at(const LepageanSystem& sys, const JetPoint& pt,
                   const std::map<std::string, Complex>& param_overrides = {});

/// Searches constant tensors (incrementing sub-seeds of `seed`) until the
/// regularity matrix of the affine Lagrangian becomes invertible. The result
/// is constant, hence closed. Throws DimensionTooSmall, SearchFailed.
GTensor regularize_affine(const LepageanSystem& sys, std::uint64_t seed, int max_tries = 64);

struct LegendreMap {
  std::vector<Expr> momenta;  // flat (s,i) -> p^i_s, jet coordinates
  Expr h_jet;                 // Hamiltonian in jet coordinates
  std::optional<Expr> h_leg;  // Hamiltonian in (x, y, p), when available
  ExprMatrix K;
};

/// Momenta p^i_s = dL/dy^s_i - 4 g^{ij}_{sv} y^v_j and Hamiltonian
/// H = -L + (dL/dy^s_i) y^s_i - 2 g^{ij}_{sv} y^s_i y^v_j. The Legendre-
/// coordinate Hamiltonian is attached for quadratic systems with mn <= 8.
LegendreMap legendre_map(const LepageanSystem& sys);

/// Inverts the Legendre map at a point: given values for (x, y) and the
/// momentum vector, returns the jet velocities. Quadratic Lagrangians solve
/// the affine system K v = p - b directly; otherwise a damped Newton
/// iteration (from zero velocities, tolerance 1e-12, at most 50 steps) runs
/// on the momentum map. Throws SingularMatrix, NewtonDivergence.
std::vector<Complex> invert_legendre(const LepageanSystem& sys,
                                     const std::map<std::string, Complex>& xy_env,
                                     const std::vector<Complex>& p);

/// Closed-form Hamiltonian in Legendre coordinates (x, y, p); exact symbolic
/// elimination via the adjugate, limited to mn <= 8 (SizeLimitExceeded above;
/// use eval_h_leg there). Throws NotQuadraticInVelocities, SingularMatrix.
Expr hamiltonian_in_legendre(const LepageanSystem& sys);

/// Numeric evaluation of the Legendre-coordinate Hamiltonian at any size:
/// one inverse-Legendre solve per evaluation.
Complex eval_h_leg(const LepageanSystem& sys, const std::map<std::string, Complex>& xy_env,
                   const std::vector<Complex>& p);

struct Corollary1Report {
  bool ok = false;
  double max_error = 0.0;
  bool symbolic = false;
};

/// Verifies that the p-Hessian of the Legendre Hamiltonian inverts the
/// regularity matrix: symbolically exact when the closed form is available,
/// otherwise via central differences (h = 1e-5) of the analytic momentum
/// gradient dH/dp = v(p); ok iff the max entry error of K*Hess - I is <= 1e-8.
Corollary1Report corollary1_check(const LepageanSystem& sys, const JetPoint& pt,
                                  const std::map<std::string, Complex>& param_overrides = {});

/// Regularity matrix induced by the distinguished higher-contact equivalent:
/// entries 2 d2L/dy^s_b dy^v_a - d2L/dy^s_a dy^v_b at row (s,a), column (v,b).
/// Singular exactly where that equivalent fails to regularize.
ExprMatrix krupka_matrix(const GeneralLagrangian& L);

}  // namespace lepage
