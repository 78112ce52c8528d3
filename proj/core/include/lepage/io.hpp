#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lepage/hamilton.hpp"
#include "lepage/legendre.hpp"

namespace lepage {

/// Reads a problem file (JSON): chart dimensions, parameter declarations with
/// complex-rational defaults, the Lagrangian (either an expression or the
/// quadratic coefficient arrays), and the 2-contact tensor specification
/// (mode explicit / canonical / random). Deterministic: the random mode is
/// reproducible from its seed. Throws IoError, SchemaError, SyntaxError.
LepageanSystem load_problem(const std::string& path);

/// Serializes a system back to the problem-file schema (g written as explicit
/// components); load_problem(write_problem(sys)) reproduces an equal system.
void write_problem(const LepageanSystem& sys, const std::string& path);
std::string problem_to_json_string(const LepageanSystem& sys);
LepageanSystem problem_from_json_string(const std::string& text);

/// A section file: m field expressions in the base variables, optional mn
/// momentum expressions (flat order), and parameter bindings.
struct SectionFile {
  std::vector<Expr> fields;
  std::optional<std::vector<Expr>> momenta;
  std::map<std::string, GaussianRational> bindings;
};

SectionFile load_section(const std::string& path, const Chart& chart, const ParamSpec& params);

/// Command-line driver. Subcommands: info, regularize, legendre, equations,
/// verify, example. Exit codes: 0 success / all checks passed, 1 checks
/// failed, 2 usage or input error. Honors LEPAGE_SEED.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lepage
