#include "msym/calculus.hpp"

namespace msym {

Form exterior_derivative(const Form& alpha) {
  const Chart& chart = alpha.chart();
  if (alpha.degree() >= chart.dim()) return Form::zero(chart, 0);
  Form r(chart, alpha.degree() + 1);
  IndexTuple idx;
  for (const auto& [I, f] : alpha.terms()) {
    for (int v = 0; v < chart.dim(); ++v) {
      Scalar df = f.partial(v);
      if (df.is_zero()) continue;
      idx.assign(1, v);
      idx.insert(idx.end(), I.begin(), I.end());
      r.add_term(idx, df);
    }
  }
  return r;
}

Form lie_derivative(const Form& alpha, const Multivector& X) {
  const Chart& chart = alpha.chart();
  int target = alpha.degree() - X.degree() + 1;
  if (target < 0) return Form::zero(chart, 0);
  // Degree underflow in either branch produces a zero 0-form; re-grade those
  // so the two branches stay summable.
  auto coerce = [&](Form f) {
    if (f.degree() == target || !f.is_zero()) return f;
    return Form::zero(chart, target);
  };
  Form a = coerce(exterior_derivative(contract(alpha, X)));
  Form b = coerce(contract(exterior_derivative(alpha), X));
  return X.degree() % 2 == 0 ? a - b : a + b;
}

Multivector schouten_bracket(const Multivector& X, const Multivector& Y) {
  if (X.chart() != Y.chart()) throw usage_error("chart mismatch in Schouten bracket");
  int r = X.degree(), s = Y.degree();
  if (r < 1 || s < 1)
    throw usage_error("Schouten bracket requires degrees >= 1");
  const Chart& chart = X.chart();
  Multivector res(chart, r + s - 1);
  IndexTuple idx;
  for (const auto& [A, f] : X.terms()) {
    for (const auto& [B, g] : Y.terms()) {
      // Treat f @A as the decomposable f @A1 ^ @A2 ^ ... with the coefficient
      // on the first factor, likewise g @B, and expand pairwise.
      for (int i = 0; i < r; ++i) {
        for (int j = 0; j < s; ++j) {
          int a = A[i], b = B[j];
          int outer = (i + j) % 2 == 0 ? 1 : -1;
          // Coefficients of the factors left in the wedge after removing
          // slot i of X and slot j of Y.
          bool f_in_bracket = (i == 0), g_in_bracket = (j == 0);
          IndexTuple rest;
          for (int k = 0; k < r; ++k)
            if (k != i) rest.push_back(A[k]);
          for (int k = 0; k < s; ++k)
            if (k != j) rest.push_back(B[k]);
          Scalar rest_coeff = Scalar::constant(chart.vars(), rat(outer));
          if (!f_in_bracket) rest_coeff = rest_coeff * f;
          if (!g_in_bracket) rest_coeff = rest_coeff * g;
          // [u @a, v @b] = u (da v) @b - v (db u) @a
          if (g_in_bracket) {
            Scalar dav = g.partial(a);
            if (!dav.is_zero()) {
              Scalar c = f_in_bracket ? f * dav : dav;
              idx.assign(1, b);
              idx.insert(idx.end(), rest.begin(), rest.end());
              res.add_term(idx, rest_coeff * c);
            }
          }
          if (f_in_bracket) {
            Scalar dbu = f.partial(b);
            if (!dbu.is_zero()) {
              Scalar c = g_in_bracket ? g * dbu : dbu;
              idx.assign(1, a);
              idx.insert(idx.end(), rest.begin(), rest.end());
              res.add_term(idx, -(rest_coeff * c));
            }
          }
        }
      }
    }
  }
  return res;
}

}  // namespace msym
