#include "lepage/verify.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lepage/errors.hpp"
#include "lepage/polynomial.hpp"

namespace lepage {

namespace {

double unit_double(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0);
}

// Deterministic probe points with coordinates in [0,1].
std::vector<JetPoint> probe_jet_points(const Chart& chart, int count, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<JetPoint> pts;
  for (int k = 0; k < count; ++k) {
    JetPoint p = JetPoint::zero(chart);
    for (auto& v : p.values) v = Complex(unit_double(eng), 0.0);
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<std::map<std::string, Complex>> probe_x_envs(const Chart& chart, int count,
                                                         std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<std::map<std::string, Complex>> envs;
  for (int k = 0; k < count; ++k) {
    std::map<std::string, Complex> e;
    for (int i = 1; i <= chart.n(); ++i) e[chart.x_name(i)] = Complex(unit_double(eng), 0.0);
    envs.push_back(std::move(e));
  }
  return envs;
}

double max_abs_at(const std::vector<Expr>& exprs,
                  const std::vector<std::map<std::string, Complex>>& envs) {
  double mx = 0.0;
  for (const Expr& e : exprs)
    for (const auto& env : envs) mx = std::max(mx, std::abs(eval(e, env)));
  return mx;
}

bool exprs_equal(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!equals(a[k], b[k]).equal) return false;
  return true;
}

}  // namespace

EquivalenceReport equivalence_suite(const LepageanSystem& sys,
                                    const std::vector<RegisteredSolution>& solutions) {
  const Chart& chart = sys.chart();
  for (const JetPoint& pt : probe_jet_points(chart, 5, 1u))
    if (!is_regular_at(sys, pt))
      throw NotRegular("system fails the regularity test at a probe point");

  EquivalenceReport rep;
  LegendreMap lm = legendre_map(sys);

  // Momentum/Hamiltonian identities against the dedonderized Lagrangian and
  // against the De Donder data of L and of the satellite.
  GeneralLagrangian lbar = dedonderize(sys.L, sys.g);
  DeDonderData dd_bar = dedonder(lbar);
  DeDonderData dd_l = dedonder(sys.L);
  Expr sat = satellite(sys.g);
  DeDonderData dd_sat = dedonder(GeneralLagrangian{chart, sat, sys.L.params});
  rep.lemma_identities_ok = true;
  rep.lemma_identities_ok &= equals(lm.h_jet, dd_bar.hamiltonian).equal;
  rep.lemma_identities_ok &= equals(lm.h_jet, sub(dd_l.hamiltonian, sat)).equal;
  for (int r = 0; r < chart.jet_count(); ++r) {
    rep.lemma_identities_ok &= equals(lm.momenta[r], dd_bar.momenta[r]).equal;
    rep.lemma_identities_ok &= equals(lm.momenta[r], sub(dd_l.momenta[r], dd_sat.momenta[r])).equal;
  }
  ExprMatrix hbar = velocity_hessian(lbar);
  ExprMatrix K = regularity_matrix(sys);
  for (int r = 0; r < K.size; ++r)
    for (int c = 0; c < K.size; ++c) rep.lemma_identities_ok &= equals(hbar.at(r, c), K.at(r, c)).equal;

  rep.closed = closedness_check(sys.g).closed;
  if (rep.closed) {
    GeneralLagrangian sat_lagrangian{chart, sat, sys.L.params};
    rep.satellite_null_ok = true;
    for (const Expr& e : euler_lagrange_exprs(sat_lagrangian))
      rep.satellite_null_ok &= equals(e, Expr()).equal;
    rep.el_equivalence_ok = exprs_equal(euler_lagrange_exprs(sys.L), euler_lagrange_exprs(lbar));
  }

  P2System p2 = p2_system(sys);
  auto x_probes = probe_x_envs(chart, 50, 7u);
  for (const RegisteredSolution& sol : solutions) {
    std::map<std::string, Expr> param_sub;
    for (const auto& [k, v] : sol.bindings) param_sub[k] = Expr::constant(v);
    auto env_probes = x_probes;
    for (auto& env : env_probes)
      for (const auto& [k, v] : sys.params.env()) env[k] = v;
    for (auto& env : env_probes)
      for (const auto& [k, v] : sol.bindings) env[k] = v.to_complex();

    SolutionVerdict verdict;
    verdict.name = sol.name;
    std::vector<Expr> fields;
    for (const Expr& f : sol.fields) fields.push_back(substitute(f, param_sub));

    verdict.max_el = max_abs_at(el_residual_on_section(sys.L, fields), env_probes);
    SectionPair delta = prolong_section(sys, fields);
    verdict.max_p2 = max_abs_at(residuals_on_section(p2, delta), env_probes);
    verdict.pass = verdict.max_el <= 1e-10 && verdict.max_p2 <= 1e-10;
    rep.solutions.push_back(std::move(verdict));
  }

  rep.pass = rep.lemma_identities_ok;
  if (rep.closed) rep.pass = rep.pass && rep.satellite_null_ok && rep.el_equivalence_ok;
  for (const auto& s : rep.solutions) rep.pass = rep.pass && s.pass;
  return rep;
}

GridSection sample_grid(const Chart& chart, const std::vector<Expr>& fields,
                        const std::map<std::string, Complex>& param_env, int n1, int n2) {
  if (chart.n() != 2) throw GridTooSmall("grid sections are defined for n = 2 charts only");
  if (static_cast<int>(fields.size()) != chart.m())
    throw IndexOutOfRange("grid needs one expression per field");
  GridSection gs;
  gs.n1 = n1;
  gs.n2 = n2;
  gs.fields.assign(chart.m(), std::vector<Complex>(static_cast<std::size_t>(n1) * n2));
  for (int s = 1; s <= chart.m(); ++s)
    for (int j = 0; j < n1; ++j)
      for (int k = 0; k < n2; ++k) {
        auto env = param_env;
        env[chart.x_name(1)] = Complex(j * (1.0 / (n1 - 1)), 0.0);
        env[chart.x_name(2)] = Complex(k * (1.0 / (n2 - 1)), 0.0);
        gs.fields[s - 1][static_cast<std::size_t>(j) * n2 + k] = eval(fields[s - 1], env);
      }
  return gs;
}

namespace {

// Second-order derivative samples along one axis: central stencils inside,
// one-sided three-point stencils at the boundary rows/columns.
std::vector<Complex> fd_derivative(const std::vector<Complex>& f, int n1, int n2, int axis,
                                   double h) {
  std::vector<Complex> out(f.size());
  auto idx = [n2](int j, int k) { return static_cast<std::size_t>(j) * n2 + k; };
  for (int j = 0; j < n1; ++j)
    for (int k = 0; k < n2; ++k) {
      int pos = axis == 1 ? j : k;
      int count = axis == 1 ? n1 : n2;
      auto sample = [&](int q) { return axis == 1 ? f[idx(q, k)] : f[idx(j, q)]; };
      Complex d;
      if (pos == 0)
        d = (-3.0 * sample(0) + 4.0 * sample(1) - sample(2)) / (2.0 * h);
      else if (pos == count - 1)
        d = (3.0 * sample(count - 1) - 4.0 * sample(count - 2) + sample(count - 3)) / (2.0 * h);
      else
        d = (sample(pos + 1) - sample(pos - 1)) / (2.0 * h);
      out[idx(j, k)] = d;
    }
  return out;
}

double grid_sup_norm(const P2System& p2, const GridSection& gs) {
  const Chart& chart = p2.sys.chart();
  const int m = chart.m();
  const int mn = chart.jet_count();
  const int n1 = gs.n1;
  const int n2 = gs.n2;
  auto idx = [n2](int j, int k) { return static_cast<std::size_t>(j) * n2 + k; };

  // Jets from the field samples.
  std::vector<std::vector<Complex>> jets(mn);
  for (int s = 1; s <= m; ++s) {
    jets[chart.flat_index(s, 1)] = fd_derivative(gs.fields[s - 1], n1, n2, 1, gs.h1());
    jets[chart.flat_index(s, 2)] = fd_derivative(gs.fields[s - 1], n1, n2, 2, gs.h2());
  }

  // Momenta through the Legendre map at every node.
  auto params = p2.sys.params.env();
  LegendreMap lm = legendre_map(p2.sys);
  std::vector<std::vector<Complex>> p(mn, std::vector<Complex>(static_cast<std::size_t>(n1) * n2));
  for (int j = 0; j < n1; ++j)
    for (int k = 0; k < n2; ++k) {
      auto env = params;
      env[chart.x_name(1)] = Complex(j * gs.h1(), 0.0);
      env[chart.x_name(2)] = Complex(k * gs.h2(), 0.0);
      for (int s = 1; s <= m; ++s) env[chart.y_name(s)] = gs.at(s, j, k);
      for (int r = 0; r < mn; ++r) {
        auto [s, i] = chart.unflat_index(r);
        env[chart.jet_name(s, i)] = jets[r][idx(j, k)];
      }
      for (int r = 0; r < mn; ++r) p[r][idx(j, k)] = eval(lm.momenta[r], env);
    }

  // Momentum divergence terms, central differences (interior use only).
  std::vector<std::vector<Complex>> dp(mn);
  for (int r = 0; r < mn; ++r) {
    auto [s, i] = chart.unflat_index(r);
    dp[r] = fd_derivative(p[r], n1, n2, i, i == 1 ? gs.h1() : gs.h2());
  }

  std::vector<Expr> dh_dy(m), dh_dp(mn);
  for (int s = 1; s <= m; ++s) dh_dy[s - 1] = differentiate(p2.h_leg, chart.y_name(s));
  for (int r = 0; r < mn; ++r) {
    auto [s, i] = chart.unflat_index(r);
    dh_dp[r] = differentiate(p2.h_leg, chart.momentum_name(i, s));
  }

  double sup = 0.0;
  for (int j = 1; j < n1 - 1; ++j)
    for (int k = 1; k < n2 - 1; ++k) {
      auto env = params;
      env[chart.x_name(1)] = Complex(j * gs.h1(), 0.0);
      env[chart.x_name(2)] = Complex(k * gs.h2(), 0.0);
      for (int s = 1; s <= m; ++s) env[chart.y_name(s)] = gs.at(s, j, k);
      for (int r = 0; r < mn; ++r) {
        auto [s, i] = chart.unflat_index(r);
        env[chart.momentum_name(i, s)] = p[r][idx(j, k)];
      }
      for (int s = 1; s <= m; ++s) {
        Complex r_s = eval(dh_dy[s - 1], env);
        for (int i = 1; i <= chart.n(); ++i) r_s += dp[chart.flat_index(s, i)][idx(j, k)];
        sup = std::max(sup, std::abs(r_s));
      }
      for (int r = 0; r < mn; ++r) {
        auto [s, i] = chart.unflat_index(r);
        Complex g = eval(dh_dp[r], env) - jets[r][idx(j, k)];
        sup = std::max(sup, std::abs(g));
      }
    }
  return sup;
}

}  // namespace

GridReport grid_residual(const P2System& p2, const GridSection& gs) {
  if (p2.sys.chart().n() != 2) throw GridTooSmall("grid residuals are defined for n = 2 charts only");
  if (!p2.reduced) throw NotRegular("grid residuals require a reduced (closed) system");
  if (gs.n1 < 5 || gs.n2 < 5) throw GridTooSmall("grids need at least 5 nodes per axis");
  GridReport rep;
  rep.sup_norm = grid_sup_norm(p2, gs);
  rep.order_estimate = std::numeric_limits<double>::quiet_NaN();
  if ((gs.n1 - 1) % 2 == 0 && (gs.n2 - 1) % 2 == 0 && gs.n1 >= 9 && gs.n2 >= 9) {
    GridSection coarse;
    coarse.n1 = (gs.n1 - 1) / 2 + 1;
    coarse.n2 = (gs.n2 - 1) / 2 + 1;
    coarse.fields.assign(gs.fields.size(),
                         std::vector<Complex>(static_cast<std::size_t>(coarse.n1) * coarse.n2));
    for (std::size_t s = 0; s < gs.fields.size(); ++s)
      for (int j = 0; j < coarse.n1; ++j)
        for (int k = 0; k < coarse.n2; ++k)
          coarse.fields[s][static_cast<std::size_t>(j) * coarse.n2 + k] =
              gs.fields[s][static_cast<std::size_t>(2 * j) * gs.n2 + 2 * k];
    double coarse_sup = grid_sup_norm(p2, coarse);
    if (rep.sup_norm > 0.0) rep.order_estimate = std::log2(coarse_sup / rep.sup_norm);
  }
  return rep;
}

}  // namespace lepage
