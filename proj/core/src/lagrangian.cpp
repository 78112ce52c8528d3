#include "lepage/lagrangian.hpp"

#include <set>

#include "lepage/errors.hpp"
#include "lepage/polynomial.hpp"

namespace lepage {

bool QuadraticLagrangian::affine() const {
  for (const Expr& e : c)
    if (!e.is_zero()) return false;
  return true;
}

Expr QuadraticLagrangian::reassemble() const {
  const int mn = chart.jet_count();
  std::vector<Expr> terms{a};
  for (int r = 0; r < mn; ++r) {
    auto [s, j] = chart.unflat_index(r);
    if (!b[r].is_zero()) terms.push_back(mul(b[r], Expr::var(chart.jet_name(s, j))));
  }
  for (int r = 0; r < mn; ++r) {
    auto [s, j] = chart.unflat_index(r);
    for (int q = 0; q < mn; ++q) {
      auto [v, k] = chart.unflat_index(q);
      const Expr& coeff = c[static_cast<std::size_t>(r) * mn + q];
      if (!coeff.is_zero())
        terms.push_back(mul({coeff, Expr::var(chart.jet_name(s, j)), Expr::var(chart.jet_name(v, k))}));
    }
  }
  return add(std::move(terms));
}

namespace {

std::set<std::string> jet_name_set(const Chart& chart) {
  auto names = chart.jet_names();
  return {names.begin(), names.end()};
}

std::map<std::string, Expr> zero_jet_map(const Chart& chart) {
  std::map<std::string, Expr> m;
  for (const auto& name : chart.jet_names()) m[name] = Expr();
  return m;
}

}  // namespace

QuadraticLagrangian extract_quadratic(const GeneralLagrangian& L) {
  const Chart& chart = L.chart;
  const int mn = chart.jet_count();
  const auto jets = jet_name_set(chart);
  const auto jets_to_zero = zero_jet_map(chart);

  QuadraticLagrangian out{chart, substitute(L.L, jets_to_zero), {}, {}, L.params};
  out.b.resize(mn);
  out.c.resize(static_cast<std::size_t>(mn) * mn);

  std::vector<Expr> first(mn);
  for (int r = 0; r < mn; ++r) {
    auto [s, j] = chart.unflat_index(r);
    first[r] = differentiate(L.L, chart.jet_name(s, j));
    out.b[r] = substitute(first[r], jets_to_zero);
  }
  for (int r = 0; r < mn; ++r) {
    for (int q = r; q < mn; ++q) {
      auto [v, k] = chart.unflat_index(q);
      Expr second = differentiate(first[r], chart.jet_name(v, k));
      if (depends_on_any(second, jets)) throw NotQuadraticInVelocities();
      Expr half = div(second, Expr::integer(2));
      out.c[static_cast<std::size_t>(r) * mn + q] = half;
      out.c[static_cast<std::size_t>(q) * mn + r] = half;
    }
  }
  if (!equals(out.reassemble(), L.L).equal) throw NotQuadraticInVelocities();
  return out;
}

ExprMatrix velocity_hessian(const GeneralLagrangian& L) {
  const Chart& chart = L.chart;
  const int mn = chart.jet_count();
  ExprMatrix H(mn);
  std::vector<Expr> first(mn);
  for (int r = 0; r < mn; ++r) {
    auto [s, j] = chart.unflat_index(r);
    first[r] = differentiate(L.L, chart.jet_name(s, j));
  }
  for (int r = 0; r < mn; ++r)
    for (int q = r; q < mn; ++q) {
      auto [v, k] = chart.unflat_index(q);
      Expr second = differentiate(first[r], chart.jet_name(v, k));
      H.at(r, q) = second;
      H.at(q, r) = second;
    }
  return H;
}

RegularityReport standard_regularity_report(const GeneralLagrangian& L, const JetPoint& pt,
                                            const std::map<std::string, Complex>& param_values) {
  auto env = pt.env(L.chart);
  for (const auto& [k, v] : param_values) env[k] = v;
  NumMatrix H = eval_matrix(velocity_hessian(L), env);
  RegularityReport rep;
  rep.det = det(H);
  rep.rank = numeric_rank(H);
  rep.regular = is_numerically_regular(H);
  return rep;
}

DeDonderData dedonder(const GeneralLagrangian& L) {
  const Chart& chart = L.chart;
  const int mn = chart.jet_count();
  DeDonderData out;
  out.momenta.resize(mn);
  std::vector<Expr> h_terms{neg(L.L)};
  for (int r = 0; r < mn; ++r) {
    auto [s, i] = chart.unflat_index(r);
    out.momenta[r] = differentiate(L.L, chart.jet_name(s, i));
    h_terms.push_back(mul(out.momenta[r], Expr::var(chart.jet_name(s, i))));
  }
  out.hamiltonian = add(std::move(h_terms));
  return out;
}

Expr total_derivative(const Chart& chart, const Expr& e, int i) {
  std::vector<Expr> terms{differentiate(e, chart.x_name(i))};
  for (int v = 1; v <= chart.m(); ++v) {
    Expr d = differentiate(e, chart.y_name(v));
    if (!d.is_zero()) terms.push_back(mul(Expr::var(chart.jet_name(v, i)), d));
    for (int j = 1; j <= chart.n(); ++j) {
      Expr dj = differentiate(e, chart.jet_name(v, j));
      if (!dj.is_zero()) terms.push_back(mul(Expr::var(chart.jet2_name(v, i, j)), dj));
    }
  }
  return add(std::move(terms));
}

std::vector<Expr> euler_lagrange_exprs(const GeneralLagrangian& L) {
  const Chart& chart = L.chart;
  std::vector<Expr> out(chart.m());
  for (int s = 1; s <= chart.m(); ++s) {
    std::vector<Expr> terms{differentiate(L.L, chart.y_name(s))};
    for (int i = 1; i <= chart.n(); ++i)
      terms.push_back(neg(total_derivative(chart, differentiate(L.L, chart.jet_name(s, i)), i)));
    out[s - 1] = add(std::move(terms));
  }
  return out;
}

std::map<std::string, Expr> section_substitution(const Chart& chart, const std::vector<Expr>& fields) {
  if (static_cast<int>(fields.size()) != chart.m())
    throw IndexOutOfRange("section needs exactly m field expressions");
  std::set<std::string> xnames;
  for (const auto& x : chart.x_names()) xnames.insert(x);
  for (const Expr& f : fields) {
    std::set<std::string> vars, params;
    collect_names(f, vars, params);
    for (const auto& v : vars)
      if (!xnames.count(v))
        throw IndexOutOfRange("section expressions may depend only on the base variables; found " + v);
  }
  std::map<std::string, Expr> sub;
  for (int s = 1; s <= chart.m(); ++s) {
    sub[chart.y_name(s)] = fields[s - 1];
    for (int i = 1; i <= chart.n(); ++i) {
      Expr di = differentiate(fields[s - 1], chart.x_name(i));
      sub[chart.jet_name(s, i)] = di;
      for (int j = i; j <= chart.n(); ++j)
        sub[chart.jet2_name(s, i, j)] = differentiate(di, chart.x_name(j));
    }
  }
  return sub;
}

std::vector<Expr> el_residual_on_section(const GeneralLagrangian& L, const std::vector<Expr>& fields) {
  auto sub = section_substitution(L.chart, fields);
  std::vector<Expr> out;
  for (const Expr& e : euler_lagrange_exprs(L)) out.push_back(substitute(e, sub));
  return out;
}

}  // namespace lepage
