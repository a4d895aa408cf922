#pragma once

#include <map>
#include <string>
#include <vector>

#include "msym/chart.hpp"
#include "msym/rational.hpp"

namespace msym {

using Monomial = std::vector<unsigned>;

/// Graded-lexicographic order over the variable order of the owning Vars.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Exact multivariate polynomial with rational coefficients over an ordered
/// variable list. The zero polynomial is the empty term map; no term ever
/// carries a zero coefficient.
class Scalar {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  Scalar() = default;
  explicit Scalar(Vars vars) : vars_(std::move(vars)) {}

  static Scalar zero(const Vars& vars) { return Scalar(vars); }
  static Scalar constant(const Vars& vars, const Rational& c);
  static Scalar variable(const Vars& vars, int index);
  static Scalar variable(const Vars& vars, const std::string& name);

  const Vars& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (the coefficient of the unit monomial).
  Rational constant_value() const;
  int total_degree() const;  // -1 for the zero polynomial
  bool depends_on(int var_index) const;

  void add_term(const Monomial& m, const Rational& c);

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Rational& c, const Scalar& a);

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Formal partial derivative with respect to the index-th variable.
  Scalar partial(int var_index) const;
  Scalar partial(const std::string& var_name) const;

  /// Exact evaluation at a full point.
  Rational eval(const std::vector<Rational>& point) const;

  /// Substitutes each variable by a polynomial over a common target list.
  Scalar substitute(const Vars& target, const std::vector<Scalar>& images) const;

  /// Canonical rendering in graded-lex term order; powers appear as repeated
  /// '*' factors so the output stays inside the expression grammar.
  std::string render() const;

 private:
  void check_same(const Scalar& o) const;

  Vars vars_;
  TermMap terms_;
};

/// Re-expresses a polynomial over another variable list by matching names.
/// Every variable the polynomial actually uses must exist in the target list.
Scalar rename_vars(const Scalar& s, const Vars& target);

}  // namespace msym
