#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "lepage/legendre.hpp"
#include "lepage/verify.hpp"

namespace lepage {

/// A worked example bundled with its expected artifacts (parsed from the
/// fixture files under share/lepage/presets) and registered exact solutions.
struct Preset {
  std::string name;
  LepageanSystem system;
  std::vector<RegisteredSolution> solutions;

  // Expected artifacts; absent entries are skipped by run_preset_checks.
  std::map<std::string, Expr> expected;                  // lagrangian, satellite, h_jet, ...
  std::optional<ExprMatrix> expected_matrix;             // regularity matrix
  std::vector<Expr> expected_momenta;                    // flat order
  std::vector<std::tuple<int, int, int, int, Expr>> expected_g;  // (sigma, nu, i, j, value)
  bool krupka_singular_expected = false;
};

std::vector<std::string> preset_names();

/// Loads a preset by name: builds the system in code and reads the expected
/// artifacts from the fixture file. Throws UnknownPreset, IoError.
Preset load_preset(const std::string& name);

struct CheckEntry {
  std::string artifact;
  bool pass = false;
  std::string detail;
};

struct PresetReport {
  std::string preset;
  std::vector<CheckEntry> entries;
  bool all_pass() const;
};

/// Compares every computed artifact of the preset system against the stored
/// expectation (exact symbolic equality unless stated otherwise in the entry
/// detail) and runs the bundled identity checks.
PresetReport run_preset_checks(const Preset& p);

/// Fixture directory: $LEPAGE_DATA_DIR when set, else the built-in location.
std::string data_dir();

}  // namespace lepage
