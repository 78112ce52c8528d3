#include "lepage/gtensor.hpp"

#include <random>
#include <set>

#include "lepage/errors.hpp"
#include "lepage/polynomial.hpp"

namespace lepage {

GTensor::GTensor(Chart chart, std::vector<std::string> params)
    : chart_(std::move(chart)), params_(std::move(params)) {}

void GTensor::set(int sigma, int nu, int i, int j, Expr e) {
  if (sigma == nu || i == j)
    throw IndexOutOfRange("g components with repeated fibre or base index vanish identically");
  chart_.flat_index(sigma, i);  // range checks
  chart_.flat_index(nu, j);
  std::set<std::string> vars, params;
  collect_names(e, vars, params);
  for (const auto& v : vars) {
    const auto* info = chart_.classify(v);
    if (info && (info->kind == Chart::NameKind::Jet || info->kind == Chart::NameKind::Jet2 ||
                 info->kind == Chart::NameKind::Momentum))
      throw IndexOutOfRange("g components must not depend on jet coordinates: " + v);
  }
  bool flip = false;
  if (sigma > nu) {
    std::swap(sigma, nu);
    flip = !flip;
  }
  if (i > j) {
    std::swap(i, j);
    flip = !flip;
  }
  comp_[{sigma, nu, i, j}] = flip ? neg(e) : e;
}

Expr GTensor::component(int sigma, int nu, int i, int j) const {
  chart_.flat_index(sigma, i);
  chart_.flat_index(nu, j);
  if (sigma == nu || i == j) return Expr();
  bool flip = false;
  if (sigma > nu) {
    std::swap(sigma, nu);
    flip = !flip;
  }
  if (i > j) {
    std::swap(i, j);
    flip = !flip;
  }
  auto it = comp_.find({sigma, nu, i, j});
  if (it == comp_.end()) return Expr();
  return flip ? neg(it->second) : it->second;
}

std::size_t GTensor::free_component_count() const {
  auto choose2 = [](int k) { return static_cast<std::size_t>(k) * (k - 1) / 2; };
  return choose2(chart_.m()) * choose2(chart_.n());
}

bool GTensor::is_constant() const {
  for (const auto& [k, e] : comp_)
    if (!e.is_const()) return false;
  return true;
}

bool GTensor::is_zero() const {
  for (const auto& [k, e] : comp_)
    if (!e.is_zero()) return false;
  return true;
}

GTensor canonical_from_quadratic(const QuadraticLagrangian& L) {
  const Chart& chart = L.chart;
  GTensor g(chart, L.params);
  // d2L/dy^s_a dy^v_b = c^{ab}_{sv} + c^{ba}_{vs} = 2 c^{ab}_{sv} for the
  // symmetrized storage.
  for (int s = 1; s <= chart.m(); ++s)
    for (int v = s + 1; v <= chart.m(); ++v)
      for (int a = 1; a <= chart.n(); ++a)
        for (int b = a + 1; b <= chart.n(); ++b) {
          Expr value = sub(mul(Expr::integer(2), L.c_at(s, a, v, b)),
                           mul(Expr::integer(2), L.c_at(s, b, v, a)));
          if (!value.is_zero()) g.set(s, v, a, b, value);
        }
  return g;
}

GTensor random_constant(const Chart& chart, std::uint64_t seed, long long amplitude) {
  if (chart.m() < 2 || chart.n() < 2)
    throw DimensionTooSmall("no nonzero antisymmetric g exists for m < 2 or n < 2");
  if (amplitude < 1) throw IndexOutOfRange("amplitude must be >= 1");
  std::mt19937_64 eng(seed);
  const long long span = 16 * amplitude;
  auto draw = [&]() -> long long {
    for (;;) {
      long long k = static_cast<long long>(eng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
      if (k != 0) return k;
    }
  };
  GTensor g(chart);
  for (int s = 1; s <= chart.m(); ++s)
    for (int v = s + 1; v <= chart.m(); ++v)
      for (int i = 1; i <= chart.n(); ++i)
        for (int j = i + 1; j <= chart.n(); ++j)
          g.set(s, v, i, j, Expr::constant(GaussianRational(Rational(draw(), 16))));
  return g;
}

Expr satellite(const GTensor& g) {
  const Chart& chart = g.chart();
  std::vector<Expr> terms;
  for (int s = 1; s <= chart.m(); ++s)
    for (int v = 1; v <= chart.m(); ++v)
      for (int i = 1; i <= chart.n(); ++i)
        for (int j = 1; j <= chart.n(); ++j) {
          Expr c = g.component(s, v, i, j);
          if (c.is_zero()) continue;
          terms.push_back(mul({Expr::integer(2), c, Expr::var(chart.jet_name(s, i)),
                               Expr::var(chart.jet_name(v, j))}));
        }
  return add(std::move(terms));
}

GeneralLagrangian dedonderize(const GeneralLagrangian& L, const GTensor& g) {
  return {L.chart, sub(L.L, satellite(g)), L.params};
}

ClosednessReport closedness_check(const GTensor& g) {
  const Chart& chart = g.chart();
  ClosednessReport rep;
  rep.closed = true;
  // (C1): for i < j and kappa < sigma < nu, the cyclic sum of fibre
  // derivatives vanishes. Triples with a repeated index vanish identically
  // by antisymmetry, so distinct ordered triples are enough.
  for (int i = 1; i <= chart.n(); ++i)
    for (int j = i + 1; j <= chart.n(); ++j)
      for (int kappa = 1; kappa <= chart.m(); ++kappa)
        for (int sigma = kappa + 1; sigma <= chart.m(); ++sigma)
          for (int nu = sigma + 1; nu <= chart.m(); ++nu) {
            Expr r = add({differentiate(g.component(sigma, nu, i, j), chart.y_name(kappa)),
                          differentiate(g.component(nu, kappa, i, j), chart.y_name(sigma)),
                          differentiate(g.component(kappa, sigma, i, j), chart.y_name(nu))});
            if (!equals(r, Expr()).equal) {
              rep.closed = false;
              rep.violations.push_back({"C1", {i, j, kappa, sigma, nu}, r});
            }
          }
  // (C2): divergence in the base indices vanishes for every i and s < v.
  for (int i = 1; i <= chart.n(); ++i)
    for (int sigma = 1; sigma <= chart.m(); ++sigma)
      for (int nu = sigma + 1; nu <= chart.m(); ++nu) {
        std::vector<Expr> terms;
        for (int j = 1; j <= chart.n(); ++j)
          terms.push_back(differentiate(g.component(sigma, nu, i, j), chart.x_name(j)));
        Expr r = add(std::move(terms));
        if (!equals(r, Expr()).equal) {
          rep.closed = false;
          rep.violations.push_back({"C2", {i, sigma, nu}, r});
        }
      }
  return rep;
}

}  // namespace lepage
