#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lepage/errors.hpp"

namespace lepage {

/// A single global fibred chart on R^n x R^m with the derived coordinate name
/// tables: x1..xn (base), y1..ym (fibre), y{s}_{i} (first jet), y{s}_{ij} with
/// i<=j (formal symmetric second jet, used only to express variational
/// residuals) and p{i}_{s} (Legendre momenta).
///
/// Flat matrix/vector indexing is sigma-major: r = (sigma-1)*n + (i-1). This
/// single convention labels the rows and columns of every matrix produced by
/// the library.
class Chart {
public:
  Chart(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  int jet_count() const { return n_ * m_; }

  /// sigma in 1..m, i in 1..n -> zero-based flat index.
  int flat_index(int sigma, int i) const;
  /// inverse of flat_index: r in [0, mn) -> (sigma, i).
  std::pair<int, int> unflat_index(int r) const;

  std::string x_name(int i) const;
  std::string y_name(int sigma) const;
  std::string jet_name(int sigma, int i) const;
  /// Symmetric second jet: indices are normalized so y{s}_{ij} == y{s}_{ji}.
  std::string jet2_name(int sigma, int i, int j) const;
  /// Momentum p^i_sigma prints base index first: p{i}_{sigma}.
  std::string momentum_name(int i, int sigma) const;

  std::vector<std::string> x_names() const;
  std::vector<std::string> y_names() const;
  /// First-jet names in flat order.
  std::vector<std::string> jet_names() const;
  /// x, y and first-jet names (the J1 coordinates), in chart order.
  std::vector<std::string> coordinate_names() const;
  std::vector<std::string> momentum_names() const;

  enum class NameKind { X, Y, Jet, Jet2, Momentum };
  struct NameInfo {
    NameKind kind;
    int sigma = 0;  // fibre index (Y, Jet, Jet2, Momentum)
    int i = 0;      // base index (X, Jet, Momentum; first of Jet2)
    int j = 0;      // second base index (Jet2)
  };
  /// Looks a coordinate name up in the tables; nullptr if unknown.
  const NameInfo* classify(const std::string& name) const;
  bool knows(const std::string& name) const { return classify(name) != nullptr; }

  friend bool operator==(const Chart& a, const Chart& b) { return a.n_ == b.n_ && a.m_ == b.m_; }

private:
  void check_fibre(int sigma) const;
  void check_base(int i) const;
  int n_;
  int m_;
  std::map<std::string, NameInfo> table_;
};

/// A point of the first jet space: values for (x^i, y^sigma, y^sigma_i),
/// jets stored in flat order.
struct JetPoint {
  int n = 0;
  int m = 0;
  std::vector<std::complex<double>> values;  // size n + m + n*m

  static JetPoint zero(const Chart& c);

  std::complex<double>& x(int i) { return values[i - 1]; }
  std::complex<double>& y(int sigma) { return values[n + sigma - 1]; }
  std::complex<double>& jet(int sigma, int i) { return values[n + m + (sigma - 1) * n + (i - 1)]; }
  std::complex<double> x(int i) const { return values[i - 1]; }
  std::complex<double> y(int sigma) const { return values[n + sigma - 1]; }
  std::complex<double> jet(int sigma, int i) const { return values[n + m + (sigma - 1) * n + (i - 1)]; }

  /// Evaluation environment binding every J1 coordinate of the chart.
  std::map<std::string, std::complex<double>> env(const Chart& c) const;
};

}  // namespace lepage
