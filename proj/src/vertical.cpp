#include "msym/vertical.hpp"

#include "msym/linalg.hpp"

namespace msym {

namespace {

void check_dims(const ConnectionData& conn, const Chart& chart) {
  if (conn.n() != chart.n() || conn.N() != chart.N())
    throw usage_error("connection data dimensions do not match chart");
}

bool connection_is_zero(const ConnectionData& conn) {
  for (int i = 1; i <= conn.N(); ++i)
    for (int mu = 1; mu <= conn.n(); ++mu)
      if (!conn.gamma_E(i, mu).is_zero()) return false;
  for (int k = 1; k <= conn.n(); ++k)
    for (int mu = 1; mu <= conn.n(); ++mu)
      for (int l = 1; l <= conn.n(); ++l)
        if (!conn.gamma_TM(k, mu, l).is_zero()) return false;
  return true;
}

Form coerce_zero(Form f, const Chart& chart, int degree) {
  if (f.degree() == degree) return f;
  if (f.is_zero()) return Form::zero(chart, degree);
  throw usage_error("internal degree bookkeeping error");
}

}  // namespace

VerticalCoframe vertical_coframe(const ConnectionData& conn, const Chart& chart) {
  check_dims(conn, chart);
  const Vars& vars = chart.vars();
  VerticalCoframe cf{chart, {}, {}};
  for (int i = 1; i <= chart.N(); ++i) {
    Form e = Form::basis(chart, {chart.q_index(i)});
    for (int nu = 1; nu <= chart.n(); ++nu) {
      Scalar g = rename_vars(conn.gamma_E(i, nu), vars);
      if (!g.is_zero()) e.add_term({chart.x_index(nu)}, g);
    }
    cf.e_q.push_back(std::move(e));
  }
  for (int i = 1; i <= chart.N(); ++i) {
    std::vector<Form> row;
    for (int mu = 1; mu <= chart.n(); ++mu) {
      Form e = Form::basis(chart, {chart.p_index(i, mu)});
      for (int kappa = 1; kappa <= chart.n(); ++kappa) {
        Scalar a = Scalar::zero(vars);
        for (int j = 1; j <= chart.N(); ++j)
          a += rename_vars(conn.gamma_E(j, kappa).partial(conn.vars().index_of(
                               "q" + std::to_string(i))),
                           vars) *
               Scalar::variable(vars, chart.p_index(j, mu));
        for (int lambda = 1; lambda <= chart.n(); ++lambda)
          a -= rename_vars(conn.gamma_TM(mu, kappa, lambda), vars) *
               Scalar::variable(vars, chart.p_index(i, lambda));
        for (int rho = 1; rho <= chart.n(); ++rho)
          a += rename_vars(conn.gamma_TM(rho, kappa, rho), vars) *
               Scalar::variable(vars, chart.p_index(i, mu));
        if (!a.is_zero()) e.add_term({chart.x_index(kappa)}, -a);
      }
      row.push_back(std::move(e));
    }
    cf.e_p.push_back(std::move(row));
  }
  return cf;
}

HorizontalMetric::HorizontalMetric(std::vector<std::vector<Rational>> g)
    : n_(static_cast<int>(g.size())), g_(std::move(g)) {
  if (n_ < 1) throw usage_error("metric must be at least 1x1");
  for (const auto& row : g_)
    if (row.size() != static_cast<std::size_t>(n_))
      throw usage_error("metric must be square");
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (g_[i][j] != g_[j][i]) throw usage_error("metric must be symmetric");
  // Gauss-Jordan inversion with exact rationals, tracking the determinant
  std::vector<std::vector<Rational>> m = g_;
  inverse_.assign(n_, std::vector<Rational>(n_, rat(0)));
  for (int i = 0; i < n_; ++i) inverse_[i][i] = rat(1);
  det_ = rat(1);
  for (int col = 0; col < n_; ++col) {
    int piv = col;
    while (piv < n_ && is_zero(m[piv][col])) ++piv;
    if (piv == n_) throw usage_error("metric must be invertible");
    if (piv != col) {
      std::swap(m[piv], m[col]);
      std::swap(inverse_[piv], inverse_[col]);
      det_ = -det_;
    }
    det_ *= m[col][col];
    Rational inv = 1 / m[col][col];
    for (int j = 0; j < n_; ++j) {
      m[col][j] *= inv;
      inverse_[col][j] *= inv;
    }
    for (int i = 0; i < n_; ++i) {
      if (i == col || is_zero(m[i][col])) continue;
      Rational f = m[i][col];
      for (int j = 0; j < n_; ++j) {
        m[i][j] -= f * m[col][j];
        inverse_[i][j] -= f * inverse_[col][j];
      }
    }
  }
  sign_ = sgn(det_);
  auto root = exact_sqrt(sign_ < 0 ? Rational(-det_) : det_);
  if (!root)
    throw usage_error("|det g| must be a perfect rational square for an exact Hodge star");
  sqrt_abs_det_ = *root;
}

HorizontalMetric HorizontalMetric::euclidean(int n) {
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, rat(0)));
  for (int i = 0; i < n; ++i) g[i][i] = rat(1);
  return HorizontalMetric(std::move(g));
}

bool is_horizontal(const Form& f) {
  for (const auto& [idx, c] : f.terms())
    for (int i : idx)
      if (!f.chart().is_x(i)) return false;
  return true;
}

int horizontality_grade(const Form& f, Projection proj) {
  if (f.is_zero()) return f.degree();
  int grade = f.degree();
  for (const auto& [idx, c] : f.terms()) {
    int h = 0;
    for (int i : idx) {
      bool horizontal =
          proj == Projection::source ? f.chart().is_x(i)
                                     : f.chart().is_x(i) || f.chart().is_q(i);
      if (horizontal) ++h;
    }
    grade = std::min(grade, h);
  }
  return grade;
}

int horizontality_grade(const Multivector& X, Projection proj) {
  if (X.is_zero()) return X.degree();
  int grade = X.degree();
  for (const auto& [idx, c] : X.terms()) {
    int v = 0;
    for (int i : idx) {
      bool vertical = proj == Projection::source
                          ? !X.chart().is_x(i)
                          : X.chart().is_p(i) || X.chart().is_energy(i);
      if (vertical) ++v;
    }
    grade = std::min(grade, v);
  }
  return grade;
}

namespace {

void check_eta_charts(const Chart& ordinary, const Chart& extended) {
  if (!extended.is_extended() || ordinary.is_extended())
    throw usage_error("eta maps between an ordinary and an extended chart");
  if (ordinary.n() != extended.n() || ordinary.N() != extended.N())
    throw usage_error("chart dimensions do not match");
}

}  // namespace

Form project_eta(const Form& f, const Chart& extended_chart) {
  check_eta_charts(f.chart(), extended_chart);
  // the ordinary coordinate layout is a prefix of the extended one
  Form r = Form::zero(extended_chart, f.degree());
  for (const auto& [idx, c] : f.terms())
    r.add_term(idx, rename_vars(c, extended_chart.vars()));
  return r;
}

Multivector project_eta(const Multivector& X, const Chart& extended_chart) {
  check_eta_charts(X.chart(), extended_chart);
  Multivector r = Multivector::zero(extended_chart, X.degree());
  for (const auto& [idx, c] : X.terms())
    r.add_term(idx, rename_vars(c, extended_chart.vars()));
  return r;
}

Form restrict_to_ordinary(const Form& f) {
  const Chart& src = f.chart();
  if (!src.is_extended()) throw usage_error("form is already on an ordinary chart");
  Chart dst = Chart::ordinary(src.n(), src.N());
  Form r = Form::zero(dst, f.degree());
  for (const auto& [idx, c] : f.terms()) {
    for (int i : idx)
      if (src.is_energy(i))
        throw usage_error("form involves the energy differential");
    r.add_term(idx, rename_vars(c, dst.vars()));
  }
  return r;
}

Multivector project_field_to_ordinary(const Multivector& X) {
  const Chart& src = X.chart();
  if (!src.is_extended()) throw usage_error("field is already on an ordinary chart");
  Chart dst = Chart::ordinary(src.n(), src.N());
  Multivector r = Multivector::zero(dst, X.degree());
  for (const auto& [idx, c] : X.terms()) {
    bool has_energy = false;
    for (int i : idx) has_energy = has_energy || src.is_energy(i);
    if (has_energy) continue;  // @p directions project to zero
    r.add_term(idx, rename_vars(c, dst.vars()));
  }
  return r;
}

Form omega_vertical(const ConnectionData& conn, const Chart& chart) {
  if (chart.is_extended())
    throw usage_error("omega^V lives on ordinary multiphase space");
  check_dims(conn, chart);
  VerticalCoframe cf = vertical_coframe(conn, chart);
  Form w = Form::zero(chart, chart.n() + 1);
  for (int i = 1; i <= chart.N(); ++i)
    for (int mu = 1; mu <= chart.n(); ++mu)
      w += wedge(cf.e_q[i - 1],
                 wedge(cf.e_p[i - 1][mu - 1], volume_form_mu(chart, mu)));
  return w;
}

Form d_vertical_coframe(const Form& f) {
  const Chart& chart = f.chart();
  if (chart.is_extended())
    throw usage_error("d^V lives on ordinary multiphase space");
  Form r(chart, f.degree() + 1);
  IndexTuple idx;
  for (const auto& [I, c] : f.terms()) {
    for (int a = 0; a < chart.dim(); ++a) {
      if (chart.is_x(a)) continue;  // only the fiber directions contribute
      Scalar dc = c.partial(a);
      if (dc.is_zero()) continue;
      idx.assign(1, a);
      idx.insert(idx.end(), I.begin(), I.end());
      r.add_term(idx, dc);
    }
  }
  return r;
}

Form expand_coframe(const Form& f, const ConnectionData& conn) {
  const Chart& chart = f.chart();
  check_dims(conn, chart);
  VerticalCoframe cf = vertical_coframe(conn, chart);
  Form r = Form::zero(chart, f.degree());
  for (const auto& [I, c] : f.terms()) {
    Form term = Form::from_scalar(chart, c);
    for (int i : I) {
      if (chart.is_x(i)) {
        term = wedge(term, Form::basis(chart, {i}));
      } else if (chart.is_q(i)) {
        term = wedge(term, cf.e_q[chart.q_label(i) - 1]);
      } else {
        auto [fi, mu] = chart.p_labels(i);
        term = wedge(term, cf.e_p[fi - 1][mu - 1]);
      }
    }
    r += term;
  }
  return r;
}

Form d_vertical(const Form& f, const ConnectionData& conn) {
  if (!is_horizontal(f))
    throw usage_error("d^V is defined on horizontal forms");
  return expand_coframe(d_vertical_coframe(f), conn);
}

Multivector solve_vertical_field(const Form& f, const ConnectionData& conn) {
  const Chart& chart = f.chart();
  if (chart.is_extended())
    throw usage_error("vertical solver lives on ordinary multiphase space");
  if (!connection_is_zero(conn))
    throw usage_error(
        "vertical solver supports zero connection data only (constant omega^V)");
  int r = chart.n() - f.degree();
  if (r < 1) throw usage_error("form degree too high for a vertical Hamiltonian field");
  Form wV = omega_vertical(conn, chart);
  std::vector<IndexTuple> rows = basis_tuples(chart.dim(), f.degree() + 1);
  std::vector<IndexTuple> cols = basis_tuples(chart.dim(), r);
  std::map<IndexTuple, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
  RationalMatrix m(rows.size(), std::vector<Rational>(cols.size(), rat(0)));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Form c = contract(wV, Multivector::basis(chart, cols[j]));
    for (const auto& [idx, coeff] : c.terms())
      m[row_of.at(idx)][j] = coeff.constant_value();
  }
  Form rhs_form = d_vertical(f, conn);
  std::vector<Scalar> rhs;
  for (const IndexTuple& t : rows) rhs.push_back(rhs_form.coefficient(t));
  auto sol = solve_linear(std::move(m), std::move(rhs));
  if (!sol)
    throw not_hamiltonian_error("no multivector field solves i_X omega^V = d^V f");
  Multivector X = Multivector::zero(chart, r);
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (!(*sol)[j].is_zero()) X.add_term(cols[j], (*sol)[j]);
  return X;
}

Form vertical_bracket(const VerticalPair& a, const VerticalPair& b,
                      const ConnectionData& conn) {
  const Chart& chart = a.f.chart();
  if (b.f.chart() != chart) throw usage_error("chart mismatch in vertical bracket");
  Form wV = omega_vertical(conn, chart);
  auto validate = [&](const VerticalPair& p) {
    Form lhs = coerce_zero(contract(wV, p.X), chart, p.f.degree() + 1);
    if (lhs != d_vertical(p.f, conn))
      throw not_hamiltonian_error("pair does not satisfy i_X omega^V = d^V f");
  };
  validate(a);
  validate(b);
  int r = a.X.degree(), s = b.X.degree();
  int target = chart.n() + 1 - r - s;
  if (target < 0) return Form::zero(chart, 0);
  Form res = contract(contract(wV, a.X), b.X);
  if (r * (s - 1) % 2 != 0) res = -res;
  return coerce_zero(std::move(res), chart, target);
}

Form hodge_star(const Form& f, const HorizontalMetric& metric) {
  const Chart& chart = f.chart();
  int n = chart.n();
  if (metric.n() != n) throw usage_error("metric dimension does not match chart");
  if (!is_horizontal(f)) throw usage_error("Hodge star is defined on horizontal forms");
  if (f.degree() > n) return Form::zero(chart, 0);
  int k = f.degree();
  Form r = Form::zero(chart, n - k);
  const auto& ginv = metric.inverse();
  for (const auto& [I, c] : f.terms()) {
    // mu_j = 1-based labels of the term's covectors
    std::vector<int> mu;
    for (int i : I) mu.push_back(chart.x_label(i));
    // sum over ordered tuples (nu_1..nu_k) of distinct indices
    std::vector<int> nu(k);
    std::vector<bool> used(n + 1, false);
    auto rec = [&](auto&& self, int depth, const Rational& acc) -> void {
      if (depth == k) {
        IndexTuple eps_tuple;
        for (int v : nu) eps_tuple.push_back(v);
        IndexTuple complement;
        for (int v = 1; v <= n; ++v)
          if (!used[v]) complement.push_back(v);
        for (int v : complement) eps_tuple.push_back(v);
        int sign = basis_monomial_sign(eps_tuple).second;
        IndexTuple out;
        for (int v : complement) out.push_back(chart.x_index(v));
        Rational coef = acc * metric.sqrt_abs_det() * rat(sign);
        r.add_term(out, coef * c);
        return;
      }
      for (int v = 1; v <= n; ++v) {
        if (used[v]) continue;
        Rational g = ginv[mu[depth] - 1][v - 1];
        if (is_zero(g)) continue;
        used[v] = true;
        nu[depth] = v;
        self(self, depth + 1, acc * g);
        used[v] = false;
      }
    };
    rec(rec, 0, rat(1));
  }
  return r;
}

Form hodge_star_inverse(const Form& f, const HorizontalMetric& metric) {
  int n = metric.n();
  int m = f.degree();
  Form r = hodge_star(f, metric);
  int sign = metric.sign() * ((m * (n - m)) % 2 == 0 ? 1 : -1);
  return sign == 1 ? r : -r;
}

Form bullet_product(const Form& f, const Form& g,
                    const HorizontalMetric& metric) {
  const Chart& chart = f.chart();
  if (g.chart() != chart) throw usage_error("chart mismatch in bullet product");
  if (!is_horizontal(f) || !is_horizontal(g))
    throw usage_error("bullet product is defined on horizontal forms");
  int n = chart.n();
  if (f.degree() + g.degree() < n) return Form::zero(chart, 0);
  Form w = wedge(hodge_star(f, metric), hodge_star(g, metric));
  return hodge_star_inverse(w, metric);
}

}  // namespace msym
