#include "lepage/hamilton.hpp"

#include <set>

#include "lepage/errors.hpp"

namespace lepage {

std::string dp_symbol(int i, int sigma) {
  return "dp" + std::to_string(i) + "_" + std::to_string(sigma);
}

namespace {

P2System build_p2(const LepageanSystem& sys, bool force_full) {
  const Chart& chart = sys.chart();
  P2System out{sys, hamiltonian_in_legendre(sys), {}, {}, false};
  out.reduced = !force_full && closedness_check(sys.g).closed;

  for (int s = 1; s <= chart.m(); ++s) {
    std::vector<Expr> terms{differentiate(out.h_leg, chart.y_name(s))};
    for (int i = 1; i <= chart.n(); ++i) terms.push_back(Expr::var(dp_symbol(i, s)));
    if (!out.reduced) {
      for (int i = 1; i <= chart.n(); ++i)
        for (int j = 1; j <= chart.n(); ++j) {
          for (int v = 1; v <= chart.m(); ++v) {
            Expr gx = differentiate(sys.g.component(s, v, i, j), chart.x_name(j));
            if (!gx.is_zero())
              terms.push_back(mul({Expr::integer(-4), gx, Expr::var(chart.jet_name(v, i))}));
          }
          for (int k = 1; k <= chart.m(); ++k)
            for (int v = 1; v <= chart.m(); ++v) {
              Expr bracket = add({differentiate(sys.g.component(k, v, i, j), chart.y_name(s)),
                                  differentiate(sys.g.component(s, k, i, j), chart.y_name(v)),
                                  differentiate(sys.g.component(v, s, i, j), chart.y_name(k))});
              if (!bracket.is_zero())
                terms.push_back(mul({Expr::integer(-2), bracket, Expr::var(chart.jet_name(k, i)),
                                     Expr::var(chart.jet_name(v, j))}));
            }
        }
    }
    out.r_fields.push_back(add(std::move(terms)));
  }

  for (int r = 0; r < chart.jet_count(); ++r) {
    auto [s, i] = chart.unflat_index(r);
    out.r_momenta.push_back(sub(differentiate(out.h_leg, chart.momentum_name(i, s)),
                                Expr::var(chart.jet_name(s, i))));
  }
  return out;
}

}  // namespace

P2System p2_system(const LepageanSystem& sys) { return build_p2(sys, false); }
P2System p2_system_full(const LepageanSystem& sys) { return build_p2(sys, true); }

SectionPair prolong_section(const LepageanSystem& sys, const std::vector<Expr>& fields) {
  auto subst = section_substitution(sys.chart(), fields);
  SectionPair out;
  out.fields = fields;
  for (const Expr& p : legendre_map(sys).momenta) out.momenta.push_back(substitute(p, subst));
  return out;
}

namespace {

std::map<std::string, Expr> section_env(const Chart& chart, const SectionPair& delta) {
  if (static_cast<int>(delta.fields.size()) != chart.m() ||
      static_cast<int>(delta.momenta.size()) != chart.jet_count())
    throw IndexOutOfRange("section has wrong field/momentum counts");
  std::map<std::string, Expr> subst;
  for (int s = 1; s <= chart.m(); ++s) {
    subst[chart.y_name(s)] = delta.fields[s - 1];
    for (int i = 1; i <= chart.n(); ++i)
      subst[chart.jet_name(s, i)] = differentiate(delta.fields[s - 1], chart.x_name(i));
  }
  for (int r = 0; r < chart.jet_count(); ++r) {
    auto [s, i] = chart.unflat_index(r);
    subst[chart.momentum_name(i, s)] = delta.momenta[r];
    subst[dp_symbol(i, s)] = differentiate(delta.momenta[r], chart.x_name(i));
  }
  return subst;
}

}  // namespace

std::vector<Expr> residuals_on_section(const P2System& p2, const SectionPair& delta) {
  auto subst = section_env(p2.sys.chart(), delta);
  std::vector<Expr> out;
  for (const Expr& t : p2.r_fields) out.push_back(substitute(t, subst));
  for (const Expr& t : p2.r_momenta) out.push_back(substitute(t, subst));
  return out;
}

std::vector<Expr> holonomy_gap(const P2System& p2, const SectionPair& delta) {
  auto subst = section_env(p2.sys.chart(), delta);
  std::vector<Expr> out;
  for (const Expr& t : p2.r_momenta) out.push_back(substitute(t, subst));
  return out;
}

}  // namespace lepage
