#pragma once

#include <memory>
#include <string>
#include <vector>

#include "msym/errors.hpp"

namespace msym {

/// Ordered variable list shared by polynomial values. Charts provide one;
/// the induced-connection module builds ad-hoc lists for fiber coordinates.
class Vars {
 public:
  Vars() : names_(std::make_shared<std::vector<std::string>>()) {}
  explicit Vars(std::vector<std::string> names)
      : names_(std::make_shared<std::vector<std::string>>(std::move(names))) {}

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }

  /// Index of a named variable, or -1.
  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
      if ((*names_)[i] == name) return static_cast<int>(i);
    return -1;
  }

  friend bool operator==(const Vars& a, const Vars& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }
  friend bool operator!=(const Vars& a, const Vars& b) { return !(a == b); }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

enum class ChartKind { extended, ordinary };

/// Adapted coordinates of multiphase space for a configuration bundle with
/// n-dimensional base and N-dimensional fiber. Coordinate order is fixed:
///   x^1..x^n, q^1..q^N, p_1^1..p_1^n, ..., p_N^1..p_N^n [, p]
/// The extended chart carries the trailing energy coordinate p.
class Chart {
 public:
  Chart() : Chart(1, 1, ChartKind::extended) {}
  Chart(int n, int N, ChartKind kind) : n_(n), N_(N), kind_(kind) {
    if (n < 1 || N < 1) throw usage_error("chart dimensions must be positive");
    std::vector<std::string> names;
    for (int mu = 1; mu <= n; ++mu) names.push_back("x" + std::to_string(mu));
    for (int i = 1; i <= N; ++i) names.push_back("q" + std::to_string(i));
    for (int i = 1; i <= N; ++i)
      for (int mu = 1; mu <= n; ++mu)
        names.push_back("p" + std::to_string(i) + "_" + std::to_string(mu));
    if (kind == ChartKind::extended) names.push_back("p");
    vars_ = Vars(std::move(names));
  }

  static Chart extended(int n, int N) { return Chart(n, N, ChartKind::extended); }
  static Chart ordinary(int n, int N) { return Chart(n, N, ChartKind::ordinary); }

  int n() const { return n_; }
  int N() const { return N_; }
  ChartKind kind() const { return kind_; }
  bool is_extended() const { return kind_ == ChartKind::extended; }
  int dim() const { return static_cast<int>(vars_.size()); }
  const Vars& vars() const { return vars_; }

  // 1-based tensor indices <-> 0-based chart positions.
  int x_index(int mu) const { return check_mu(mu), mu - 1; }
  int q_index(int i) const { return check_i(i), n_ + i - 1; }
  int p_index(int i, int mu) const {
    check_i(i), check_mu(mu);
    return n_ + N_ + (i - 1) * n_ + (mu - 1);
  }
  int energy_index() const {
    if (!is_extended()) throw usage_error("ordinary chart has no energy coordinate");
    return dim() - 1;
  }

  bool is_x(int c) const { return c >= 0 && c < n_; }
  bool is_q(int c) const { return c >= n_ && c < n_ + N_; }
  bool is_p(int c) const { return c >= n_ + N_ && c < n_ + N_ + N_ * n_; }
  bool is_energy(int c) const {
    return is_extended() && c == dim() - 1;
  }
  /// For a momentum coordinate p_i^mu, the 1-based (i, mu) pair.
  std::pair<int, int> p_labels(int c) const {
    int k = c - n_ - N_;
    return {k / n_ + 1, k % n_ + 1};
  }
  /// 1-based space-time label of an x coordinate.
  int x_label(int c) const { return c + 1; }
  int q_label(int c) const { return c - n_ + 1; }

  const std::string& coord_name(int c) const { return vars_.name(c); }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.n_ == b.n_ && a.N_ == b.N_ && a.kind_ == b.kind_;
  }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  void check_mu(int mu) const {
    if (mu < 1 || mu > n_) throw usage_error("space-time index out of range");
  }
  void check_i(int i) const {
    if (i < 1 || i > N_) throw usage_error("fiber index out of range");
  }

  int n_;
  int N_;
  ChartKind kind_;
  Vars vars_;
};

}  // namespace msym
