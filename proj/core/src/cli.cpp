#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lepage/errors.hpp"
#include "lepage/io.hpp"
#include "lepage/polynomial.hpp"
#include "lepage/presets.hpp"
#include "lepage/verify.hpp"

namespace lepage {

using nlohmann::json;

namespace {

json complex_out(const Complex& z) { return json::array({z.real(), z.imag()}); }

std::string complex_text(const Complex& z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() > 0 ? " + " : " - ") << std::abs(z.imag()) << "*im";
  return os.str();
}

std::string flat_legend(const Chart& chart) {
  std::ostringstream os;
  os << "rows/cols flat (sigma,i):";
  for (int r = 0; r < chart.jet_count(); ++r) {
    auto [s, i] = chart.unflat_index(r);
    os << " (" << s << "," << i << ")";
  }
  return os.str();
}

void print_matrix(std::ostream& out, const ExprMatrix& M) {
  for (int r = 0; r < M.size; ++r) {
    out << "  [";
    for (int c = 0; c < M.size; ++c) {
      if (c) out << ", ";
      out << to_string(M.at(r, c));
    }
    out << "]\n";
  }
}

json matrix_json(const ExprMatrix& M) {
  json rows = json::array();
  for (int r = 0; r < M.size; ++r) {
    json row = json::array();
    for (int c = 0; c < M.size; ++c) row.push_back(to_string(M.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

std::string lagrangian_class(const LepageanSystem& sys) {
  if (!sys.quadratic) return "general";
  return sys.quadratic->affine() ? "affine" : "quadratic";
}

int cmd_info(const std::string& path, const std::string& format, std::ostream& out) {
  LepageanSystem sys = load_problem(path);
  RegularityReport rep = standard_regularity_report(sys.L, JetPoint::zero(sys.chart()), sys.params.env());
  if (format == "json") {
    json j;
    j["n"] = sys.chart().n();
    j["m"] = sys.chart().m();
    json params = json::array();
    for (const auto& name : sys.params.names) params.push_back(name);
    j["parameters"] = params;
    j["class"] = lagrangian_class(sys);
    j["standard_regularity"] = {{"det", complex_out(rep.det)}, {"rank", rep.rank}, {"regular", rep.regular}};
    out << j.dump(2) << "\n";
  } else {
    out << "n = " << sys.chart().n() << ", m = " << sys.chart().m() << "\n";
    out << "parameters:";
    if (sys.params.names.empty()) out << " (none)";
    for (const auto& name : sys.params.names) out << " " << name;
    out << "\n";
    out << "lagrangian class: " << lagrangian_class(sys) << "\n";
    out << "standard velocity Hessian at the origin (default parameters):\n";
    out << "  det = " << complex_text(rep.det) << "\n";
    out << "  rank = " << rep.rank << "\n";
    out << "  regular: " << (rep.regular ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_regularize(const std::string& path, const std::string& strategy, std::uint64_t seed,
                   const std::string& format, std::ostream& out) {
  LepageanSystem sys = load_problem(path);
  GTensor g = sys.g;
  if (strategy == "canonical") {
    if (!sys.quadratic) throw NotQuadraticInVelocities();
    g = canonical_from_quadratic(*sys.quadratic);
  } else if (strategy == "random") {
    g = regularize_affine(sys, seed);
  } else if (strategy != "explicit") {
    throw IoError("unknown strategy '" + strategy + "'");
  }
  LepageanSystem candidate = make_system(sys.L, g, sys.params);
  bool regular = is_regular_at(candidate, JetPoint::zero(sys.chart()));
  ClosednessReport closed = closedness_check(g);

  json comps = json::array();
  for (const auto& [key, value] : g.stored())
    comps.push_back(json{{"sigma", key[0]}, {"nu", key[1]}, {"i", key[2]}, {"j", key[3]},
                         {"expr", to_string(value)}});
  if (format == "json") {
    json j;
    j["strategy"] = strategy;
    j["g"] = {{"mode", "explicit"}, {"components", comps}};
    j["regular"] = regular;
    j["closed"] = closed.closed;
    out << j.dump(2) << "\n";
  } else {
    out << "strategy: " << strategy << "\n";
    out << "g components (sigma, nu, i, j):\n";
    for (const auto& [key, value] : g.stored())
      out << "  (" << key[0] << ", " << key[1] << ", " << key[2] << ", " << key[3]
          << ") = " << to_string(value) << "\n";
    if (g.stored().empty()) out << "  (none)\n";
    out << "regular: " << (regular ? "yes" : "no") << "\n";
    out << "closed: " << (closed.closed ? "yes" : "no") << "\n";
  }
  return regular ? 0 : 1;
}

int cmd_legendre(const std::string& path, const std::string& format, std::ostream& out) {
  LepageanSystem sys = load_problem(path);
  LegendreMap lm = legendre_map(sys);
  const Chart& chart = sys.chart();
  if (format == "json") {
    json j;
    json moms = json::object();
    for (int r = 0; r < chart.jet_count(); ++r) {
      auto [s, i] = chart.unflat_index(r);
      moms[chart.momentum_name(i, s)] = to_string(lm.momenta[r]);
    }
    j["momenta"] = moms;
    j["regularity_matrix"] = matrix_json(lm.K);
    j["h_jet"] = to_string(lm.h_jet);
    if (lm.h_leg) j["h_legendre"] = to_string(*lm.h_leg);
    out << j.dump(2) << "\n";
  } else {
    out << "momenta:\n";
    for (int r = 0; r < chart.jet_count(); ++r) {
      auto [s, i] = chart.unflat_index(r);
      out << "  " << chart.momentum_name(i, s) << " = " << to_string(lm.momenta[r]) << "\n";
    }
    out << "regularity matrix, " << flat_legend(chart) << "\n";
    print_matrix(out, lm.K);
    out << "H (jet coordinates) = " << to_string(lm.h_jet) << "\n";
    if (lm.h_leg)
      out << "H (Legendre coordinates) = " << to_string(*lm.h_leg) << "\n";
    else
      out << "H (Legendre coordinates): no closed form at this size; evaluated per point\n";
  }
  return 0;
}

int cmd_equations(const std::string& path, const std::string& format, std::ostream& out) {
  LepageanSystem sys = load_problem(path);
  const Chart& chart = sys.chart();
  std::vector<Expr> el = euler_lagrange_exprs(sys.L);
  P2System p2 = p2_system(sys);
  if (format == "json") {
    json j;
    json els = json::array();
    for (const Expr& e : el) els.push_back(to_string(e));
    j["euler_lagrange"] = els;
    j["reduced"] = p2.reduced;
    json rf = json::array(), rm = json::array();
    for (const Expr& e : p2.r_fields) rf.push_back(to_string(e));
    for (const Expr& e : p2.r_momenta) rm.push_back(to_string(e));
    j["hamilton_field_residuals"] = rf;
    j["hamilton_momentum_residuals"] = rm;
    out << j.dump(2) << "\n";
  } else {
    out << "Euler-Lagrange expressions (formal second jet):\n";
    for (int s = 1; s <= chart.m(); ++s) out << "  E_" << s << " = " << to_string(el[s - 1]) << "\n";
    out << "Hamilton residual templates (dp{i}_{s} = d p{i}_{s} / d x{i} along the section):\n";
    out << "  reduced: " << (p2.reduced ? "yes" : "no") << "\n";
    for (int s = 1; s <= chart.m(); ++s)
      out << "  R_" << s << " = " << to_string(p2.r_fields[s - 1]) << "\n";
    for (int r = 0; r < chart.jet_count(); ++r) {
      auto [s, i] = chart.unflat_index(r);
      out << "  R" << i << "_" << s << " = " << to_string(p2.r_momenta[r]) << "\n";
    }
  }
  return 0;
}

int cmd_verify(const std::string& path, const std::string& section_path, int grid_n,
               const std::string& format, std::ostream& out) {
  LepageanSystem sys = load_problem(path);
  SectionFile sec = load_section(section_path, sys.chart(), sys.params);

  json j;
  bool pass = true;
  std::ostringstream text;

  if (sec.momenta) {
    // Explicit-momenta candidate: evaluate the Hamilton residual templates
    // and the holonomy gap directly.
    P2System p2 = p2_system(sys);
    SectionPair delta{sec.fields, *sec.momenta};
    std::map<std::string, Expr> bind_sub;
    for (const auto& [k, v] : sec.bindings) bind_sub[k] = Expr::constant(v);
    SectionPair bound{delta.fields, delta.momenta};
    for (auto& f : bound.fields) f = substitute(f, bind_sub);
    for (auto& p : bound.momenta) p = substitute(p, bind_sub);
    std::vector<Expr> res = residuals_on_section(p2, bound);
    std::mt19937_64 eng(7);
    double mx = 0.0;
    for (int k = 0; k < 50; ++k) {
      std::map<std::string, Complex> env = sys.params.env();
      for (const auto& [name, v] : sec.bindings) env[name] = v.to_complex();
      for (int i = 1; i <= sys.chart().n(); ++i)
        env[sys.chart().x_name(i)] =
            Complex(static_cast<double>(eng() >> 11) * (1.0 / 9007199254740992.0), 0.0);
      for (const Expr& e : res) mx = std::max(mx, std::abs(eval(e, env)));
    }
    pass = mx <= 1e-10;
    j["max_hamilton_residual"] = mx;
    text << "max |Hamilton residual| at 50 probes = " << mx << "\n";
  } else {
    RegisteredSolution sol{"section", sec.fields, sec.bindings};
    EquivalenceReport rep = equivalence_suite(sys, {sol});
    pass = rep.pass;
    const SolutionVerdict& v = rep.solutions.front();
    j["max_el_residual"] = v.max_el;
    j["max_hamilton_residual"] = v.max_p2;
    j["identities_ok"] = rep.lemma_identities_ok;
    j["closed"] = rep.closed;
    text << "max |Euler-Lagrange residual| at 50 probes = " << v.max_el << "\n";
    text << "max |Hamilton residual| at 50 probes = " << v.max_p2 << "\n";
    text << "momentum/Hamiltonian identities: " << (rep.lemma_identities_ok ? "ok" : "FAIL") << "\n";
    text << "closed 2-contact form: " << (rep.closed ? "yes" : "no") << "\n";
  }

  if (grid_n > 0) {
    P2System p2 = p2_system(sys);
    std::map<std::string, Complex> env = sys.params.env();
    for (const auto& [name, v] : sec.bindings) env[name] = v.to_complex();
    GridSection gs = sample_grid(sys.chart(), sec.fields, env, grid_n, grid_n);
    GridReport gr = grid_residual(p2, gs);
    j["grid"] = {{"n", grid_n}, {"sup_norm", gr.sup_norm}, {"order_estimate", gr.order_estimate}};
    text << "grid N=" << grid_n << ": sup_norm = " << gr.sup_norm
         << ", order estimate = " << gr.order_estimate << "\n";
  }

  j["pass"] = pass;
  text << "pass: " << (pass ? "yes" : "no") << "\n";
  if (format == "json")
    out << j.dump(2) << "\n";
  else
    out << text.str();
  return pass ? 0 : 1;
}

int cmd_example(const std::string& name, const std::string& format, std::ostream& out) {
  Preset p = load_preset(name);
  PresetReport rep = run_preset_checks(p);
  if (format == "json") {
    json j;
    j["preset"] = rep.preset;
    json entries = json::array();
    for (const auto& e : rep.entries)
      entries.push_back(json{{"artifact", e.artifact}, {"pass", e.pass}, {"detail", e.detail}});
    j["entries"] = entries;
    j["all_pass"] = rep.all_pass();
    out << j.dump(2) << "\n";
  } else {
    out << "preset " << rep.preset << "\n";
    for (const auto& e : rep.entries)
      out << "  [" << (e.pass ? "PASS" : "FAIL") << "] " << e.artifact << " (" << e.detail << ")\n";
    out << (rep.all_pass() ? "all checks passed" : "CHECKS FAILED") << "\n";
  }
  return rep.all_pass() ? 0 : 1;
}

void emit_error(const std::string& format, const std::string& code, const std::string& msg,
                std::ostream& err) {
  if (format == "json") {
    json j;
    j["error"] = {{"code", code}, {"message", msg}};
    err << j.dump(2) << "\n";
  } else {
    err << "error [" << code << "]: " << msg << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"symbolic-numeric toolkit for 2-contact regularizations and Legendre transformations"};
  app.name("lepage");

  std::uint64_t seed = 42;
  if (const char* env = std::getenv("LEPAGE_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  probabilistic_seed() = seed;

  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string problem_path, section_path, strategy = "explicit", preset_name;
  int grid_n = 0;
  std::uint64_t cmd_seed = seed;

  auto* info = app.add_subcommand("info", "dimensions, Lagrangian class, standard regularity report");
  info->add_option("problem", problem_path, "problem JSON file")->required();

  auto* reg = app.add_subcommand("regularize", "produce or validate a 2-contact tensor");
  reg->add_option("problem", problem_path)->required();
  reg->add_option("--strategy", strategy, "canonical | random | explicit")
      ->check(CLI::IsMember({"canonical", "random", "explicit"}));
  reg->add_option("--seed", cmd_seed, "seed of the random search");

  auto* leg = app.add_subcommand("legendre", "momenta, regularity matrix, Hamiltonians");
  leg->add_option("problem", problem_path)->required();

  auto* eqs = app.add_subcommand("equations", "Euler-Lagrange expressions and Hamilton residual templates");
  eqs->add_option("problem", problem_path)->required();

  auto* ver = app.add_subcommand("verify", "run the equivalence suite on a section");
  ver->add_option("problem", problem_path)->required();
  ver->add_option("--section", section_path, "section JSON file")->required();
  ver->add_option("--grid", grid_n, "also run the N x N grid residual check");

  auto* ex = app.add_subcommand("example", "run a bundled worked example");
  ex->add_option("name", preset_name, "preset name")->required();

  app.require_subcommand(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e, out, err);
      return 0;
    }
    std::ostringstream msg;
    int code = app.exit(e, msg, msg);
    (void)code;
    emit_error(format, "UsageError", msg.str(), err);
    return 2;
  }

  try {
    if (*info) return cmd_info(problem_path, format, out);
    if (*reg) return cmd_regularize(problem_path, strategy, cmd_seed, format, out);
    if (*leg) return cmd_legendre(problem_path, format, out);
    if (*eqs) return cmd_equations(problem_path, format, out);
    if (*ver) return cmd_verify(problem_path, section_path, grid_n, format, out);
    if (*ex) return cmd_example(preset_name, format, out);
  } catch (const SchemaError& e) {
    emit_error(format, e.code(), e.what(), err);
    return 2;
  } catch (const IoError& e) {
    emit_error(format, e.code(), e.what(), err);
    return 2;
  } catch (const SyntaxError& e) {
    emit_error(format, e.code(), e.what(), err);
    return 2;
  } catch (const UnknownIdentifier& e) {
    emit_error(format, e.code(), e.what(), err);
    return 2;
  } catch (const UnknownPreset& e) {
    emit_error(format, e.code(), e.what(), err);
    return 2;
  } catch (const Error& e) {
    // Check-level failures: the input was well-formed but the mathematical
    // operation refused (singular matrix, dimension too small, ...).
    emit_error(format, e.code(), e.what(), err);
    return 1;
  } catch (const std::exception& e) {
    emit_error(format, "InternalError", e.what(), err);
    return 2;
  }
  emit_error(format, "UsageError", "no subcommand given", err);
  return 2;
}

}  // namespace lepage
