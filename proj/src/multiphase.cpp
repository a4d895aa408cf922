#include "msym/multiphase.hpp"

namespace msym {

namespace {

Rational determinant(std::vector<std::vector<Rational>> m) {
  std::size_t n = m.size();
  Rational det = rat(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && is_zero(m[piv][col])) ++piv;
    if (piv == n) return rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t i = col + 1; i < n; ++i) {
      Rational f = m[i][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  return det;
}

bool is_affine(const Scalar& s) { return s.total_degree() <= 1; }

/// Constant value of the partial derivative of an affine polynomial.
Rational affine_partial(const Scalar& s, int var) {
  Scalar d = s.partial(var);
  if (!d.is_constant()) throw unsupported_change_error("map is not affine");
  return d.constant_value();
}

}  // namespace

Form volume_form(const Chart& chart) {
  IndexTuple idx;
  for (int mu = 1; mu <= chart.n(); ++mu) idx.push_back(chart.x_index(mu));
  return Form::basis(chart, idx);
}

Form volume_form_mu(const Chart& chart, int mu) {
  return contract(volume_form(chart),
                  Multivector::basis(chart, {chart.x_index(mu)}));
}

Form theta(const Chart& chart) {
  if (!chart.is_extended()) throw usage_error("theta requires an extended chart");
  Form t = Form::zero(chart, chart.n());
  for (int i = 1; i <= chart.N(); ++i) {
    Form dq = Form::basis(chart, {chart.q_index(i)});
    for (int mu = 1; mu <= chart.n(); ++mu) {
      Scalar p = Scalar::variable(chart.vars(), chart.p_index(i, mu));
      t += p * wedge(dq, volume_form_mu(chart, mu));
    }
  }
  Scalar p = Scalar::variable(chart.vars(), chart.energy_index());
  t += p * volume_form(chart);
  return t;
}

Form omega(const Chart& chart) {
  if (!chart.is_extended()) throw usage_error("omega requires an extended chart");
  Form w = Form::zero(chart, chart.n() + 1);
  for (int i = 1; i <= chart.N(); ++i) {
    Form dq = Form::basis(chart, {chart.q_index(i)});
    for (int mu = 1; mu <= chart.n(); ++mu) {
      Form dp = Form::basis(chart, {chart.p_index(i, mu)});
      w += wedge(dq, wedge(dp, volume_form_mu(chart, mu)));
    }
  }
  Form dp = Form::basis(chart, {chart.energy_index()});
  w -= wedge(dp, volume_form(chart));
  return w;
}

Multivector sigma(const Chart& chart) {
  Multivector s = Multivector::zero(chart, 1);
  for (int i = 1; i <= chart.N(); ++i) {
    for (int mu = 1; mu <= chart.n(); ++mu) {
      int c = chart.p_index(i, mu);
      s.add_term({c}, Scalar::variable(chart.vars(), c));
    }
  }
  if (chart.is_extended()) {
    int c = chart.energy_index();
    s.add_term({c}, Scalar::variable(chart.vars(), c));
  }
  return s;
}

Form phi_form(const std::vector<Rational>& point, const Chart& chart) {
  if (!chart.is_extended()) throw usage_error("phi_form requires an extended chart");
  if (point.size() != static_cast<std::size_t>(chart.dim()))
    throw usage_error("point length does not match chart");
  Form t = theta(chart);
  Form r = Form::zero(chart, t.degree());
  for (const auto& [idx, c] : t.terms())
    r.add_term(idx, Scalar::constant(chart.vars(), c.eval(point)));
  return r;
}

PairingResult dual_pairing(const Chart& chart, const std::vector<Rational>& z,
                           const std::vector<Rational>& u, bool twisted) {
  if (z.size() != static_cast<std::size_t>(chart.dim()))
    throw usage_error("point length does not match chart");
  if (u.size() != static_cast<std::size_t>(chart.N() * chart.n()))
    throw usage_error("jet coordinate length does not match chart");
  Rational v = rat(0);
  for (int i = 1; i <= chart.N(); ++i)
    for (int mu = 1; mu <= chart.n(); ++mu)
      v += z[chart.p_index(i, mu)] * u[(i - 1) * chart.n() + (mu - 1)];
  if (chart.is_extended()) v += z[chart.energy_index()];
  return {v, twisted};
}

CoordinateChange::CoordinateChange(Chart chart, std::vector<Scalar> x_map,
                                   std::vector<Scalar> q_map,
                                   std::vector<Scalar> x_inverse,
                                   std::vector<Scalar> q_inverse)
    : chart_(std::move(chart)),
      x_map_(std::move(x_map)),
      q_map_(std::move(q_map)),
      x_inverse_(std::move(x_inverse)),
      q_inverse_(std::move(q_inverse)) {
  int n = chart_.n(), N = chart_.N();
  if (x_map_.size() != static_cast<std::size_t>(n) ||
      x_inverse_.size() != static_cast<std::size_t>(n) ||
      q_map_.size() != static_cast<std::size_t>(N) ||
      q_inverse_.size() != static_cast<std::size_t>(N))
    throw usage_error("coordinate map count does not match chart");
  const Vars& vars = chart_.vars();
  auto check_support = [&](const Scalar& s, bool allow_q, const char* what) {
    if (s.vars() != vars) throw usage_error("coordinate map over a different chart");
    if (!is_affine(s)) throw unsupported_change_error("coordinate map is not affine");
    for (int c = 0; c < chart_.dim(); ++c) {
      bool ok = chart_.is_x(c) || (allow_q && chart_.is_q(c));
      if (!ok && s.depends_on(c))
        throw usage_error(std::string(what) + " depends on a forbidden coordinate");
    }
  };
  for (const Scalar& s : x_map_) check_support(s, false, "x map");
  for (const Scalar& s : x_inverse_) check_support(s, false, "x inverse");
  for (const Scalar& s : q_map_) check_support(s, true, "q map");
  for (const Scalar& s : q_inverse_) check_support(s, true, "q inverse");
  // map o inverse and inverse o map must both be the identity on (x, q)
  auto base_images = [&](const std::vector<Scalar>& xs,
                         const std::vector<Scalar>& qs) {
    std::vector<Scalar> im;
    for (int c = 0; c < chart_.dim(); ++c) {
      if (chart_.is_x(c))
        im.push_back(xs[c]);
      else if (chart_.is_q(c))
        im.push_back(qs[c - n]);
      else
        im.push_back(Scalar::variable(vars, c));
    }
    return im;
  };
  auto check_identity = [&](const std::vector<Scalar>& outer_x,
                            const std::vector<Scalar>& outer_q,
                            const std::vector<Scalar>& inner_x,
                            const std::vector<Scalar>& inner_q) {
    std::vector<Scalar> im = base_images(inner_x, inner_q);
    for (int mu = 1; mu <= n; ++mu)
      if (outer_x[mu - 1].substitute(vars, im) !=
          Scalar::variable(vars, chart_.x_index(mu)))
        throw unsupported_change_error("x maps do not compose to the identity");
    for (int i = 1; i <= N; ++i)
      if (outer_q[i - 1].substitute(vars, im) !=
          Scalar::variable(vars, chart_.q_index(i)))
        throw unsupported_change_error("q maps do not compose to the identity");
  };
  check_identity(x_map_, q_map_, x_inverse_, q_inverse_);
  check_identity(x_inverse_, q_inverse_, x_map_, q_map_);
}

CoordinateChange CoordinateChange::identity(const Chart& chart) {
  std::vector<Scalar> xs, qs;
  for (int mu = 1; mu <= chart.n(); ++mu)
    xs.push_back(Scalar::variable(chart.vars(), chart.x_index(mu)));
  for (int i = 1; i <= chart.N(); ++i)
    qs.push_back(Scalar::variable(chart.vars(), chart.q_index(i)));
  return CoordinateChange(chart, xs, qs, xs, qs);
}

CoordinateChange CoordinateChange::inverse() const {
  return CoordinateChange(chart_, x_inverse_, q_inverse_, x_map_, q_map_);
}

std::vector<Scalar> CoordinateChange::coordinate_images(bool twisted) const {
  int n = chart_.n(), N = chart_.N();
  const Vars& vars = chart_.vars();
  // constant Jacobians of the affine base change
  std::vector<std::vector<Rational>> a_inv(n, std::vector<Rational>(n));  // dx^mu/dx'^kappa
  for (int mu = 0; mu < n; ++mu)
    for (int kappa = 0; kappa < n; ++kappa)
      a_inv[mu][kappa] = affine_partial(x_inverse_[mu], chart_.x_index(kappa + 1));
  std::vector<std::vector<Rational>> a_fwd(n, std::vector<Rational>(n));  // dx'^kappa/dx^mu
  for (int kappa = 0; kappa < n; ++kappa)
    for (int mu = 0; mu < n; ++mu)
      a_fwd[kappa][mu] = affine_partial(x_map_[kappa], chart_.x_index(mu + 1));
  std::vector<std::vector<Rational>> b_inv(N, std::vector<Rational>(N));  // dq^i/dq'^k
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k)
      b_inv[i][k] = affine_partial(q_inverse_[i], chart_.q_index(k + 1));
  std::vector<std::vector<Rational>> c_fwd(N, std::vector<Rational>(n));  // dq'^k/dx^mu
  for (int k = 0; k < N; ++k)
    for (int mu = 0; mu < n; ++mu)
      c_fwd[k][mu] = affine_partial(q_map_[k], chart_.x_index(mu + 1));
  Rational det = determinant(a_inv);

  std::vector<Scalar> im;
  for (int mu = 1; mu <= n; ++mu) im.push_back(x_map_[mu - 1]);
  for (int i = 1; i <= N; ++i) im.push_back(q_map_[i - 1]);
  for (int k = 1; k <= N; ++k) {
    for (int kappa = 1; kappa <= n; ++kappa) {
      Scalar acc = Scalar::zero(vars);
      for (int i = 1; i <= N; ++i)
        for (int mu = 1; mu <= n; ++mu) {
          Rational coef = a_fwd[kappa - 1][mu - 1] * b_inv[i - 1][k - 1];
          if (twisted) coef *= det;
          if (!is_zero(coef))
            acc += coef * Scalar::variable(vars, chart_.p_index(i, mu));
        }
      im.push_back(acc);
    }
  }
  if (chart_.is_extended()) {
    Scalar acc = Scalar::variable(vars, chart_.energy_index());
    for (int k = 1; k <= N; ++k)
      for (int mu = 1; mu <= n; ++mu)
        for (int i = 1; i <= N; ++i) {
          Rational coef = c_fwd[k - 1][mu - 1] * b_inv[i - 1][k - 1];
          if (!is_zero(coef))
            acc -= coef * Scalar::variable(vars, chart_.p_index(i, mu));
        }
    if (twisted) acc = det * acc;
    im.push_back(acc);
  }
  return im;
}

std::vector<Rational> transform_momenta(const CoordinateChange& change,
                                        const std::vector<Rational>& point,
                                        bool twisted) {
  const Chart& chart = change.chart();
  if (point.size() != static_cast<std::size_t>(chart.dim()))
    throw usage_error("point length does not match chart");
  std::vector<Rational> out;
  for (const Scalar& im : change.coordinate_images(twisted))
    out.push_back(im.eval(point));
  return out;
}

Form pullback_form(const CoordinateChange& change, const Form& alpha) {
  const Chart& chart = change.chart();
  if (alpha.chart() != chart) throw usage_error("chart mismatch in pullback");
  std::vector<Scalar> images = change.coordinate_images(true);
  const Vars& vars = chart.vars();
  std::vector<Form> d_images;
  for (const Scalar& im : images)
    d_images.push_back(exterior_derivative(Form::from_scalar(chart, im)));
  Form r = Form::zero(chart, alpha.degree());
  for (const auto& [I, f] : alpha.terms()) {
    Form term = Form::from_scalar(chart, f.substitute(vars, images));
    for (int c : I) term = wedge(term, d_images[c]);
    r += term;
  }
  return r;
}

}  // namespace msym
