#include "lepage/chart.hpp"

namespace lepage {

Chart::Chart(int n, int m) : n_(n), m_(m) {
  if (n < 1 || m < 1) throw DimensionTooSmall("chart needs n >= 1 and m >= 1");
  // Single-digit indices keep the generated name tables collision-free
  // (y1_23 would be ambiguous between a first and a second jet otherwise).
  if (n > 9 || m > 9) throw IndexOutOfRange("chart dimensions above 9 are not supported");
  for (int i = 1; i <= n_; ++i) table_[x_name(i)] = {NameKind::X, 0, i, 0};
  for (int s = 1; s <= m_; ++s) {
    table_[y_name(s)] = {NameKind::Y, s, 0, 0};
    for (int i = 1; i <= n_; ++i) {
      table_[jet_name(s, i)] = {NameKind::Jet, s, i, 0};
      table_[momentum_name(i, s)] = {NameKind::Momentum, s, i, 0};
      for (int j = i; j <= n_; ++j) table_[jet2_name(s, i, j)] = {NameKind::Jet2, s, i, j};
    }
  }
}

int Chart::flat_index(int sigma, int i) const {
  check_fibre(sigma);
  check_base(i);
  return (sigma - 1) * n_ + (i - 1);
}

std::pair<int, int> Chart::unflat_index(int r) const {
  if (r < 0 || r >= n_ * m_) throw IndexOutOfRange("flat index " + std::to_string(r) + " out of range");
  return {r / n_ + 1, r % n_ + 1};
}

std::string Chart::x_name(int i) const {
  check_base(i);
  return "x" + std::to_string(i);
}

std::string Chart::y_name(int sigma) const {
  check_fibre(sigma);
  return "y" + std::to_string(sigma);
}

std::string Chart::jet_name(int sigma, int i) const {
  check_fibre(sigma);
  check_base(i);
  return "y" + std::to_string(sigma) + "_" + std::to_string(i);
}

std::string Chart::jet2_name(int sigma, int i, int j) const {
  check_fibre(sigma);
  check_base(i);
  check_base(j);
  if (i > j) std::swap(i, j);
  return "y" + std::to_string(sigma) + "_" + std::to_string(i) + std::to_string(j);
}

std::string Chart::momentum_name(int i, int sigma) const {
  check_fibre(sigma);
  check_base(i);
  return "p" + std::to_string(i) + "_" + std::to_string(sigma);
}

std::vector<std::string> Chart::x_names() const {
  std::vector<std::string> v;
  for (int i = 1; i <= n_; ++i) v.push_back(x_name(i));
  return v;
}

std::vector<std::string> Chart::y_names() const {
  std::vector<std::string> v;
  for (int s = 1; s <= m_; ++s) v.push_back(y_name(s));
  return v;
}

std::vector<std::string> Chart::jet_names() const {
  std::vector<std::string> v(jet_count());
  for (int s = 1; s <= m_; ++s)
    for (int i = 1; i <= n_; ++i) v[flat_index(s, i)] = jet_name(s, i);
  return v;
}

std::vector<std::string> Chart::coordinate_names() const {
  std::vector<std::string> v = x_names();
  for (const auto& y : y_names()) v.push_back(y);
  for (const auto& j : jet_names()) v.push_back(j);
  return v;
}

std::vector<std::string> Chart::momentum_names() const {
  std::vector<std::string> v(jet_count());
  for (int s = 1; s <= m_; ++s)
    for (int i = 1; i <= n_; ++i) v[flat_index(s, i)] = momentum_name(i, s);
  return v;
}

const Chart::NameInfo* Chart::classify(const std::string& name) const {
  auto it = table_.find(name);
  return it == table_.end() ? nullptr : &it->second;
}

void Chart::check_fibre(int sigma) const {
  if (sigma < 1 || sigma > m_)
    throw IndexOutOfRange("fibre index " + std::to_string(sigma) + " out of 1.." + std::to_string(m_));
}

void Chart::check_base(int i) const {
  if (i < 1 || i > n_)
    throw IndexOutOfRange("base index " + std::to_string(i) + " out of 1.." + std::to_string(n_));
}

JetPoint JetPoint::zero(const Chart& c) {
  JetPoint p;
  p.n = c.n();
  p.m = c.m();
  p.values.assign(p.n + p.m + p.n * p.m, {0.0, 0.0});
  return p;
}

std::map<std::string, std::complex<double>> JetPoint::env(const Chart& c) const {
  std::map<std::string, std::complex<double>> e;
  for (int i = 1; i <= n; ++i) e[c.x_name(i)] = x(i);
  for (int s = 1; s <= m; ++s) e[c.y_name(s)] = y(s);
  for (int s = 1; s <= m; ++s)
    for (int i = 1; i <= n; ++i) e[c.jet_name(s, i)] = jet(s, i);
  return e;
}

}  // namespace lepage
