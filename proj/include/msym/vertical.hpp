#pragma once

#include <vector>

#include "msym/connections.hpp"
#include "msym/exterior.hpp"
#include "msym/hamiltonian.hpp"

namespace msym {

/// Vertical coframe of ordinary/extended multiphase space induced by
/// connection data:
///   e^i = dq^i + Gamma^i_nu dx^nu
///   e_i^mu = dp_i^mu - (dGamma^j_kappa/dq^i p_j^mu - Gamma^mu_{kappa lambda}
///            p_i^lambda + Gamma^rho_{kappa rho} p_i^mu) dx^kappa
struct VerticalCoframe {
  Chart chart;
  std::vector<Form> e_q;               // e^i, i = 1..N
  std::vector<std::vector<Form>> e_p;  // e_p[i-1][mu-1] = e_i^mu
};

VerticalCoframe vertical_coframe(const ConnectionData& conn, const Chart& chart);

/// Constant symmetric rational metric on the horizontal block, with exact
/// inverse and an exactly rational sqrt(|det|) (required for the Hodge star
/// to stay inside the rationals).
class HorizontalMetric {
 public:
  explicit HorizontalMetric(std::vector<std::vector<Rational>> g);
  static HorizontalMetric euclidean(int n);

  int n() const { return n_; }
  const std::vector<std::vector<Rational>>& g() const { return g_; }
  const std::vector<std::vector<Rational>>& inverse() const { return inverse_; }
  const Rational& det() const { return det_; }
  const Rational& sqrt_abs_det() const { return sqrt_abs_det_; }
  int sign() const { return sign_; }

 private:
  int n_;
  std::vector<std::vector<Rational>> g_, inverse_;
  Rational det_, sqrt_abs_det_;
  int sign_;
};

/// True when every term of the form is built from dx's only (coefficients
/// may still depend on all coordinates).
bool is_horizontal(const Form& f);

enum class Projection { source, target };

/// Largest s such that every term carries at least s horizontal covectors
/// (source: the dx's; target: dx's and dq's).
int horizontality_grade(const Form& f, Projection proj);
/// Largest s such that every term carries at least s vertical vectors
/// (source: @q, @p_i^mu, @p; target: @p_i^mu, @p).
int horizontality_grade(const Multivector& X, Projection proj);

/// Reads an ordinary-chart form on the extended chart (the pullback along the
/// projection that forgets the energy coordinate).
Form project_eta(const Form& f, const Chart& extended_chart);
Multivector project_eta(const Multivector& X, const Chart& extended_chart);

/// Inverse direction for p-independent objects: drops the energy coordinate.
/// Forms must not involve dp or p-dependent coefficients; multivector terms
/// containing @p are discarded (they are eta-related to zero).
Form restrict_to_ordinary(const Form& f);
Multivector project_field_to_ordinary(const Multivector& X);

/// Kanatchikov's vertical multisymplectic form
/// omega^V = e^i ^ e_i^mu ^ d^n x_mu (the n-horizontal remainder omitted);
/// ordinary chart only.
Form omega_vertical(const ConnectionData& conn, const Chart& chart);

/// Vertical exterior derivative in the coframe representation, where index
/// tuples are read against (dx^mu, e^i, e_i^mu) instead of the coordinate
/// coframe: the fiber-direction part of d. Squares to zero identically.
Form d_vertical_coframe(const Form& f);

/// Expands a coframe-representation form into the coordinate coframe by
/// substituting the e-forms.
Form expand_coframe(const Form& f, const ConnectionData& conn);

/// d^V of a horizontal form (where the two representations agree), returned
/// in the coordinate coframe.
Form d_vertical(const Form& f, const ConnectionData& conn);

/// Solves i_X omega^V = d^V f for a horizontal form f. Only supported for
/// zero connection data, where omega^V has constant coefficients.
Multivector solve_vertical_field(const Form& f, const ConnectionData& conn);

/// Kanatchikov's bracket {f,g}^V = (-1)^{r(s-1)} i_Y i_X omega^V between
/// Hamiltonian pairs on the ordinary chart; each pair is validated against
/// i_X omega^V = d^V f first.
struct VerticalPair {
  Form f;
  Multivector X;
};
Form vertical_bracket(const VerticalPair& a, const VerticalPair& b,
                      const ConnectionData& conn);

/// Hodge star on the horizontal block with the epsilon convention
/// eps_{1..n} = +1; exact for metrics with rational sqrt(|det|).
Form hodge_star(const Form& f, const HorizontalMetric& metric);
Form hodge_star_inverse(const Form& f, const HorizontalMetric& metric);

/// f . g = star^{-1}(star f ^ star g); associative, degree a + b - n,
/// underflow yields the zero form.
Form bullet_product(const Form& f, const Form& g,
                    const HorizontalMetric& metric);

}  // namespace msym
