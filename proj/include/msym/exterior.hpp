#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "msym/chart.hpp"
#include "msym/scalar.hpp"

namespace msym {

/// Strictly increasing coordinate-index tuple labeling a basis monomial of
/// the exterior algebra (dz^{i1} ^ ... ^ dz^{ir} or the multivector analogue).
using IndexTuple = std::vector<int>;

/// Sorts an index tuple and reports the permutation parity: (canonical, +1/-1),
/// or sign 0 when an index repeats.
inline std::pair<IndexTuple, int> basis_monomial_sign(IndexTuple indices) {
  int sign = 1;
  // insertion sort, counting transpositions
  for (std::size_t i = 1; i < indices.size(); ++i) {
    int v = indices[i];
    std::size_t j = i;
    while (j > 0 && indices[j - 1] > v) {
      indices[j] = indices[j - 1];
      --j;
      sign = -sign;
    }
    indices[j] = v;
  }
  for (std::size_t i = 1; i < indices.size(); ++i)
    if (indices[i] == indices[i - 1]) return {indices, 0};
  return {indices, sign};
}

struct FormTag {};
struct MultivectorTag {};

/// Graded exterior object over a chart: a map from canonical (strictly
/// increasing) index tuples to polynomial coefficients. Signs from index
/// reordering are absorbed into the coefficients, so equality is a plain
/// map comparison.
template <class Tag>
class Graded {
 public:
  using TermMap = std::map<IndexTuple, Scalar>;

  Graded() : chart_(), degree_(0) {}
  Graded(Chart chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    if (degree < 0 || degree > chart_.dim())
      throw usage_error("degree out of range for chart");
  }

  static Graded zero(const Chart& chart, int degree) { return Graded(chart, degree); }

  /// Degree-0 object holding a single polynomial coefficient.
  static Graded from_scalar(const Chart& chart, const Scalar& s) {
    Graded g(chart, 0);
    g.add_term({}, s);
    return g;
  }

  /// Basis monomial with unit coefficient; indices in any order, sign absorbed.
  static Graded basis(const Chart& chart, IndexTuple indices) {
    auto [canon, sign] = basis_monomial_sign(std::move(indices));
    Graded g(chart, static_cast<int>(canon.size()));
    if (sign != 0)
      g.terms_[canon] = Scalar::constant(chart.vars(), rat(sign));
    return g;
  }

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const IndexTuple& canon) const {
    auto it = terms_.find(canon);
    return it == terms_.end() ? Scalar::zero(chart_.vars()) : it->second;
  }

  /// Adds coeff * dz^indices (indices not necessarily sorted).
  void add_term(IndexTuple indices, const Scalar& coeff) {
    if (static_cast<int>(indices.size()) != degree_)
      throw usage_error("index tuple length does not match degree");
    if (coeff.vars() != chart_.vars())
      throw usage_error("coefficient over a different chart");
    if (coeff.is_zero()) return;
    auto [canon, sign] = basis_monomial_sign(std::move(indices));
    if (sign == 0) return;
    for (int c : canon)
      if (c < 0 || c >= chart_.dim()) throw usage_error("coordinate index out of range");
    auto it = terms_.find(canon);
    Scalar add = sign == 1 ? coeff : -coeff;
    if (it == terms_.end()) {
      terms_.emplace(std::move(canon), std::move(add));
    } else {
      it->second += add;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Graded operator-() const {
    Graded r(chart_, degree_);
    for (const auto& [idx, c] : terms_) r.terms_[idx] = -c;
    return r;
  }

  Graded& operator+=(const Graded& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, c);
    return *this;
  }
  Graded& operator-=(const Graded& o) {
    check_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
    return *this;
  }
  friend Graded operator+(Graded a, const Graded& b) { return a += b; }
  friend Graded operator-(Graded a, const Graded& b) { return a -= b; }

  friend Graded operator*(const Scalar& s, const Graded& g) {
    if (s.vars() != g.chart_.vars())
      throw usage_error("scalar over a different chart");
    Graded r(g.chart_, g.degree_);
    for (const auto& [idx, c] : g.terms_) {
      Scalar prod = s * c;
      if (!prod.is_zero()) r.terms_[idx] = std::move(prod);
    }
    return r;
  }
  friend Graded operator*(const Rational& s, const Graded& g) {
    return Scalar::constant(g.chart_.vars(), s) * g;
  }

  friend bool operator==(const Graded& a, const Graded& b) {
    return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Graded& a, const Graded& b) { return !(a == b); }

  std::string render() const;

 private:
  void check_compatible(const Graded& o) const {
    if (chart_ != o.chart_) throw usage_error("chart mismatch");
    if (degree_ != o.degree_) throw usage_error("degree mismatch in sum");
  }

  Chart chart_;
  int degree_;
  TermMap terms_;
};

using Form = Graded<FormTag>;
using Multivector = Graded<MultivectorTag>;

/// Exterior product; degree adds, supercommutativity handled by parity.
template <class Tag>
Graded<Tag> wedge(const Graded<Tag>& a, const Graded<Tag>& b) {
  if (a.chart() != b.chart()) throw usage_error("chart mismatch in wedge");
  Graded<Tag> r(a.chart(), a.degree() + b.degree());
  if (a.degree() + b.degree() > a.chart().dim()) return Graded<Tag>::zero(a.chart(), 0);
  IndexTuple merged;
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      Scalar prod = ca * cb;
      r.add_term(merged, prod);
    }
  }
  return r;
}

/// Contraction i_X alpha. Decomposable multivectors contract constituent by
/// constituent, first factor first; general ones by coefficient-linearity.
/// When deg X exceeds deg alpha the result is the zero 0-form.
inline Form contract(const Form& alpha, const Multivector& X) {
  if (alpha.chart() != X.chart()) throw usage_error("chart mismatch in contraction");
  if (X.degree() > alpha.degree()) return Form::zero(alpha.chart(), 0);
  Form r(alpha.chart(), alpha.degree() - X.degree());
  for (const auto& [J, g] : X.terms()) {
    for (const auto& [I, f] : alpha.terms()) {
      IndexTuple cur = I;
      int sign = 1;
      bool dead = false;
      for (int j : J) {
        auto it = std::find(cur.begin(), cur.end(), j);
        if (it == cur.end()) {
          dead = true;
          break;
        }
        if ((it - cur.begin()) % 2 != 0) sign = -sign;
        cur.erase(it);
      }
      if (dead) continue;
      r.add_term(cur, sign == 1 ? g * f : -(g * f));
    }
  }
  return r;
}

namespace detail {
inline std::string render_atom(FormTag, const std::string& name) {
  return "d(" + name + ")";
}
inline std::string render_atom(MultivectorTag, const std::string& name) {
  return "@" + name;
}
}  // namespace detail

template <class Tag>
std::string Graded<Tag>::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    std::string cs = c.render();
    bool compound = cs.find(" + ") != std::string::npos ||
                    cs.find(" - ") != std::string::npos;
    bool neg = !compound && cs.size() > 0 && cs[0] == '-';
    if (first) {
      if (neg) {
        out += "-";
        cs = cs.substr(1);
      }
    } else {
      out += neg ? " - " : " + ";
      if (neg) cs = cs.substr(1);
    }
    first = false;
    std::string atoms;
    for (int ci : idx) {
      if (!atoms.empty()) atoms += "^";
      atoms += detail::render_atom(Tag{}, chart_.coord_name(ci));
    }
    if (atoms.empty()) {
      out += cs;  // a 0-form has a single term, so no parentheses needed
    } else if (cs == "1") {
      out += atoms;
    } else if (compound) {
      out += "(" + cs + ")*" + atoms;
    } else {
      out += cs + "*" + atoms;
    }
  }
  return out;
}

}  // namespace msym
