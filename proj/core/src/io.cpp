#include "lepage/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lepage/errors.hpp"
#include "lepage/parser.hpp"

namespace lepage {

using nlohmann::json;

namespace {

Rational rational_from_string(const std::string& s, const std::string& where) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                    boost::multiprecision::cpp_int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw SchemaError(where, "malformed rational literal '" + s + "'");
  }
}

GaussianRational complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw SchemaError(where, "complex values are [re, im] arrays of rational strings");
  return {rational_from_string(j[0].get<std::string>(), where),
          rational_from_string(j[1].get<std::string>(), where)};
}

json complex_to_json(const GaussianRational& c) {
  return json::array({to_string(c.re), to_string(c.im)});
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

int require_int(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw SchemaError(key, "missing or non-integer field");
  return j.at(key).get<int>();
}

LepageanSystem problem_from_json(const json& j) {
  Chart chart(require_int(j, "n"), require_int(j, "m"));
  ParamSpec params;
  if (j.contains("parameters")) {
    if (!j.at("parameters").is_array()) throw SchemaError("parameters", "must be an array");
    for (std::size_t k = 0; k < j.at("parameters").size(); ++k) {
      const json& p = j.at("parameters")[k];
      std::string where = "parameters[" + std::to_string(k) + "]";
      if (!p.contains("name") || !p.at("name").is_string())
        throw SchemaError(where + ".name", "missing parameter name");
      std::string name = p.at("name").get<std::string>();
      params.names.push_back(name);
      if (p.contains("default")) params.defaults[name] = complex_from_json(p.at("default"), where + ".default");
    }
  }

  if (!j.contains("lagrangian")) throw SchemaError("lagrangian", "missing");
  const json& lag = j.at("lagrangian");
  GeneralLagrangian L{chart, Expr(), params.names};
  if (lag.contains("expr")) {
    L.L = parse(lag.at("expr").get<std::string>(), chart, params.names);
  } else if (lag.contains("a") && lag.contains("b") && lag.contains("c")) {
    const int mn = chart.jet_count();
    QuadraticLagrangian q{chart, parse(lag.at("a").get<std::string>(), chart, params.names),
                          std::vector<Expr>(mn), std::vector<Expr>(static_cast<std::size_t>(mn) * mn),
                          params.names};
    const json& b = lag.at("b");
    if (!b.is_array() || static_cast<int>(b.size()) != chart.m())
      throw SchemaError("lagrangian.b", "needs m rows");
    for (int s = 1; s <= chart.m(); ++s) {
      if (static_cast<int>(b[s - 1].size()) != chart.n())
        throw SchemaError("lagrangian.b", "row needs n entries");
      for (int i = 1; i <= chart.n(); ++i)
        q.b[chart.flat_index(s, i)] = parse(b[s - 1][i - 1].get<std::string>(), chart, params.names);
    }
    const json& c = lag.at("c");
    if (!c.is_array() || static_cast<int>(c.size()) != chart.m())
      throw SchemaError("lagrangian.c", "needs m x m x n x n entries");
    for (int s = 1; s <= chart.m(); ++s)
      for (int v = 1; v <= chart.m(); ++v)
        for (int a = 1; a <= chart.n(); ++a)
          for (int bb = 1; bb <= chart.n(); ++bb) {
            Expr raw;
            try {
              raw = parse(c[s - 1][v - 1][a - 1][bb - 1].get<std::string>(), chart, params.names);
            } catch (const json::exception&) {
              throw SchemaError("lagrangian.c", "needs m x m x n x n entries");
            }
            // symmetrize on input so any convention is absorbed
            std::size_t r1 = static_cast<std::size_t>(chart.flat_index(s, a)) * mn + chart.flat_index(v, bb);
            q.c[r1] = add(q.c[r1], div(raw, Expr::integer(2)));
            std::size_t r2 = static_cast<std::size_t>(chart.flat_index(v, bb)) * mn + chart.flat_index(s, a);
            q.c[r2] = add(q.c[r2], div(raw, Expr::integer(2)));
          }
    L.L = q.reassemble();
  } else {
    throw SchemaError("lagrangian", "needs either expr or the a/b/c coefficient arrays");
  }

  if (!j.contains("g")) throw SchemaError("g", "missing");
  const json& gj = j.at("g");
  std::string mode = gj.value("mode", "explicit");
  GTensor g(chart, params.names);
  if (mode == "explicit") {
    for (std::size_t k = 0; k < gj.value("components", json::array()).size(); ++k) {
      const json& c = gj.at("components")[k];
      std::string where = "g.components[" + std::to_string(k) + "]";
      int sigma = require_int(c, "sigma");
      int nu = require_int(c, "nu");
      int i = require_int(c, "i");
      int jj = require_int(c, "j");
      if (sigma >= nu || i >= jj)
        throw SchemaError(where, "explicit components require sigma < nu and i < j");
      try {
        g.set(sigma, nu, i, jj, parse(c.at("expr").get<std::string>(), chart, params.names));
      } catch (const IndexOutOfRange& e) {
        throw SchemaError(where, e.what());
      }
    }
  } else if (mode == "canonical") {
    g = canonical_from_quadratic(extract_quadratic(L));
  } else if (mode == "random") {
    g = random_constant(chart, gj.value("seed", 42));
  } else {
    throw SchemaError("g.mode", "must be explicit, canonical or random");
  }
  return make_system(std::move(L), std::move(g), std::move(params));
}

json problem_to_json(const LepageanSystem& sys) {
  json j;
  j["n"] = sys.chart().n();
  j["m"] = sys.chart().m();
  json params = json::array();
  for (const auto& name : sys.params.names) {
    json p;
    p["name"] = name;
    auto it = sys.params.defaults.find(name);
    if (it != sys.params.defaults.end()) p["default"] = complex_to_json(it->second);
    params.push_back(p);
  }
  j["parameters"] = params;
  j["lagrangian"] = json{{"expr", to_string(sys.L.L)}};
  json comps = json::array();
  for (const auto& [key, value] : sys.g.stored()) {
    json c;
    c["sigma"] = key[0];
    c["nu"] = key[1];
    c["i"] = key[2];
    c["j"] = key[3];
    c["expr"] = to_string(value);
    comps.push_back(c);
  }
  j["g"] = json{{"mode", "explicit"}, {"components", comps}};
  return j;
}

}  // namespace

LepageanSystem load_problem(const std::string& path) { return problem_from_json(read_json_file(path)); }

void write_problem(const LepageanSystem& sys, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << problem_to_json(sys).dump(2) << "\n";
}

std::string problem_to_json_string(const LepageanSystem& sys) { return problem_to_json(sys).dump(2); }

LepageanSystem problem_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON: ") + e.what());
  }
  return problem_from_json(j);
}

SectionFile load_section(const std::string& path, const Chart& chart, const ParamSpec& params) {
  json j = read_json_file(path);
  SectionFile out;
  if (!j.contains("fields") || !j.at("fields").is_array() ||
      static_cast<int>(j.at("fields").size()) != chart.m())
    throw SchemaError("fields", "needs exactly m field expressions");

  std::vector<std::string> names = params.names;
  if (j.contains("bindings"))
    for (const auto& [k, v] : j.at("bindings").items()) {
      out.bindings[k] = complex_from_json(v, "bindings." + k);
      if (std::find(names.begin(), names.end(), k) == names.end()) names.push_back(k);
    }

  std::set<std::string> allowed;
  for (const auto& x : chart.x_names()) allowed.insert(x);
  for (const auto& f : j.at("fields")) {
    Expr e = parse(f.get<std::string>(), chart, names);
    std::set<std::string> vars, ps;
    collect_names(e, vars, ps);
    for (const auto& v : vars)
      if (!allowed.count(v)) throw SchemaError("fields", "may depend only on base variables; found " + v);
    out.fields.push_back(e);
  }
  if (j.contains("momenta")) {
    if (!j.at("momenta").is_array() || static_cast<int>(j.at("momenta").size()) != chart.jet_count())
      throw SchemaError("momenta", "needs mn expressions in flat order");
    std::vector<Expr> ms;
    for (const auto& t : j.at("momenta")) {
      Expr e = parse(t.get<std::string>(), chart, names);
      std::set<std::string> vars, ps;
      collect_names(e, vars, ps);
      for (const auto& v : vars)
        if (!allowed.count(v)) throw SchemaError("momenta", "may depend only on base variables; found " + v);
      ms.push_back(e);
    }
    out.momenta = std::move(ms);
  }
  return out;
}

}  // namespace lepage
