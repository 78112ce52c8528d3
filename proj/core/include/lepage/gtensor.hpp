#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lepage/chart.hpp"
#include "lepage/expr.hpp"
#include "lepage/lagrangian.hpp"

namespace lepage {

/// The 2-contact coefficient tensor g^{ij}_{sv}(x, y): antisymmetric in the
/// fibre pair and in the base pair, symmetric under swapping both at once.
/// Only the components with s < v, i < j are stored; every other access is
/// computed, so the symmetry relations cannot be violated by construction.
/// Components never depend on jet coordinates.
class GTensor {
public:
  explicit GTensor(Chart chart, std::vector<std::string> params = {});

  const Chart& chart() const { return chart_; }
  const std::vector<std::string>& params() const { return params_; }

  /// Stores g^{ij}_{sv} = e (indices normalized, sign adjusted). Requires
  /// s != v and i != j; the expression must be jet-free.
  void set(int sigma, int nu, int i, int j, Expr e);

  /// g^{ij}_{sv} with the symmetry relations applied; zero when s == v or i == j.
  Expr component(int sigma, int nu, int i, int j) const;

  /// The stored free components, keyed by (s, v, i, j) with s < v, i < j.
  const std::map<std::array<int, 4>, Expr>& stored() const { return comp_; }

  std::size_t free_component_count() const;  // C(m,2) * C(n,2)
  bool is_constant() const;
  bool is_zero() const;

private:
  Chart chart_;
  std::map<std::array<int, 4>, Expr> comp_;
  std::vector<std::string> params_;
};

/// g^{ab}_{sv} = d2L/dy^s_a dy^v_b - d2L/dy^s_b dy^v_a built from the
/// quadratic coefficients; satisfies the symmetries by construction.
GTensor canonical_from_quadratic(const QuadraticLagrangian& L);

/// Constant tensor with free components drawn i.i.d. uniform on the rationals
/// k/16, k in [-16*amplitude, 16*amplitude] \ {0}; deterministic in the seed.
/// Throws DimensionTooSmall when m < 2 or n < 2.
GTensor random_constant(const Chart& chart, std::uint64_t seed, long long amplitude = 1);

/// Satellite Lagrangian l = 2 g^{ij}_{sv} y^s_i y^v_j (sum over all indices).
Expr satellite(const GTensor& g);

/// Dedonderized Lagrangian: L - satellite(g).
GeneralLagrangian dedonderize(const GeneralLagrangian& L, const GTensor& g);

struct ClosednessViolation {
  std::string condition;     // "C1" or "C2"
  std::vector<int> indices;  // C1: (i, j, kappa, sigma, nu); C2: (i, sigma, nu)
  Expr residual;
};

struct ClosednessReport {
  bool closed = false;
  std::vector<ClosednessViolation> violations;
};

/// Coefficient conditions equivalent to the closedness of the 2-contact form:
///   (C1) cyclic y-derivative sum over each fibre triple vanishes, per base pair;
///   (C2) sum_j dg^{ij}_{sv}/dx^j vanishes for every i and fibre pair.
/// Both are decided by exact symbolic equality.
ClosednessReport closedness_check(const GTensor& g);

}  // namespace lepage
