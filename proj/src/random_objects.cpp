#include "msym/random_objects.hpp"

#include <algorithm>
#include <numeric>

namespace msym {

Rational RandomSource::rational() {
  return rat(uniform(-5, 5), uniform(1, 5));
}

int RandomSource::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

Scalar RandomSource::scalar(const Vars& vars) {
  std::vector<int> all(vars.size());
  std::iota(all.begin(), all.end(), 0);
  return scalar_in(vars, all);
}

Scalar RandomSource::scalar_in(const Vars& vars, const std::vector<int>& allowed) {
  Scalar s = Scalar::zero(vars);
  for (int t = 0; t < 3; ++t) {
    int d = allowed.empty() ? 0 : uniform(0, max_degree_);
    Monomial m(vars.size(), 0);
    for (int k = 0; k < d; ++k)
      ++m[allowed[uniform(0, static_cast<int>(allowed.size()) - 1)]];
    s.add_term(m, rational());
  }
  return s;
}

Scalar RandomSource::scalar_xq(const Chart& chart) {
  std::vector<int> allowed;
  for (int c = 0; c < chart.dim(); ++c)
    if (chart.is_x(c) || chart.is_q(c)) allowed.push_back(c);
  return scalar_in(chart.vars(), allowed);
}

namespace {

IndexTuple random_tuple(RandomSource& rs, int dim, int degree) {
  std::vector<int> all(dim);
  std::iota(all.begin(), all.end(), 0);
  // Fisher-Yates prefix of the requested length
  for (int i = 0; i < degree; ++i)
    std::swap(all[i], all[rs.uniform(i, dim - 1)]);
  IndexTuple t(all.begin(), all.begin() + degree);
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

Form RandomSource::form(const Chart& chart, int degree) {
  Form f = Form::zero(chart, degree);
  for (int t = 0; t < 3; ++t)
    f.add_term(random_tuple(*this, chart.dim(), degree), scalar(chart.vars()));
  return f;
}

Multivector RandomSource::multivector(const Chart& chart, int degree) {
  Multivector X = Multivector::zero(chart, degree);
  for (int t = 0; t < 3; ++t)
    X.add_term(random_tuple(*this, chart.dim(), degree), scalar(chart.vars()));
  return X;
}

Multivector RandomSource::locally_hamiltonian(const Chart& chart, int degree) {
  Multivector X = Multivector::zero(chart, degree);
  // constant-coefficient part: always locally Hamiltonian since omega is
  // constant-coefficient
  for (int t = 0; t < 2; ++t)
    X.add_term(random_tuple(*this, chart.dim(), degree),
               Scalar::constant(chart.vars(), rational()));
  // kernel elements with polynomial coefficients
  KernelBasis kb = kernel_basis(chart, degree);
  if (!kb.elements.empty()) {
    for (int t = 0; t < 2; ++t) {
      const Multivector& xi =
          kb.elements[uniform(0, static_cast<int>(kb.elements.size()) - 1)];
      X += scalar(chart.vars()) * xi;
    }
  }
  if (degree == 1) {
    std::vector<Scalar> v;
    for (int i = 1; i <= chart.N(); ++i) v.push_back(scalar_xq(chart));
    X += canonical_lift(chart, v);
  }
  if (degree == chart.n())
    X += hamiltonian_field_for_function(chart, scalar(chart.vars()));
  return X;
}

Multivector RandomSource::exact_hamiltonian(const Chart& chart, int degree) {
  if (degree == 1) {
    Multivector X = Multivector::zero(chart, 1);
    for (int mu = 1; mu <= chart.n(); ++mu)
      X.add_term({chart.x_index(mu)}, Scalar::constant(chart.vars(), rational()));
    std::vector<Scalar> v;
    for (int i = 1; i <= chart.N(); ++i) v.push_back(scalar_xq(chart));
    return X + canonical_lift(chart, v);
  }
  if (degree != 2) throw usage_error("exact Hamiltonian generator supports degrees 1 and 2");
  Multivector X = Multivector::zero(chart, 2);
  for (int mu = 1; mu <= chart.n(); ++mu)
    for (int nu = mu + 1; nu <= chart.n(); ++nu)
      X.add_term({chart.x_index(mu), chart.x_index(nu)},
                 Scalar::constant(chart.vars(), rational()));
  // kernel elements scaled by arbitrary polynomials: i_xi theta = 0 and
  // i_xi omega = 0 make h xi exact Hamiltonian
  KernelBasis kb = kernel_basis(chart, 2);
  if (!kb.elements.empty()) {
    const Multivector& xi =
        kb.elements[uniform(0, static_cast<int>(kb.elements.size()) - 1)];
    X += scalar(chart.vars()) * xi;
  }
  // filtered wedge of two degree-1 exact fields
  for (int attempt = 0; attempt < 8; ++attempt) {
    Multivector cand = X + wedge(exact_hamiltonian(chart, 1),
                                 exact_hamiltonian(chart, 1));
    if (is_exact_hamiltonian(cand)) return cand;
  }
  return X;
}

Form RandomSource::horizontal_poisson(const Chart& chart, int degree) {
  if (degree > chart.n() - 1)
    throw usage_error("horizontal Poisson generator needs degree < n");
  Form f = Form::zero(chart, degree);
  for (int t = 0; t < 2; ++t) {
    IndexTuple xs = random_tuple(*this, chart.n(), degree);  // x block is a prefix
    f.add_term(xs, scalar_xq(chart));
  }
  return f;
}

HamiltonianPair RandomSource::poisson_pair(const Chart& chart) {
  int kind = uniform(0, 2);
  if (kind == 0) {
    Scalar f = scalar(chart.vars());
    return {Form::from_scalar(chart, f), hamiltonian_field_for_function(chart, f)};
  }
  if (kind == 1) {
    int deg = chart.n() >= 2 ? uniform(1, 2) : 1;
    return momentum_map(exact_hamiltonian(chart, deg));
  }
  Form f = horizontal_poisson(chart, uniform(0, chart.n() - 1));
  return solve_hamiltonian_field(f);
}

ConnectionData RandomSource::connection(int n, int N) {
  Vars base = ConnectionData::base_vars(n, N);
  std::vector<int> xs, all(base.size());
  std::iota(all.begin(), all.end(), 0);
  for (int mu = 0; mu < n; ++mu) xs.push_back(mu);
  std::vector<std::vector<Scalar>> ge(N, std::vector<Scalar>(n, Scalar::zero(base)));
  for (int i = 0; i < N; ++i)
    for (int mu = 0; mu < n; ++mu) ge[i][mu] = scalar_in(base, all);
  std::vector<std::vector<std::vector<Scalar>>> gtm(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(base))));
  for (int k = 0; k < n; ++k)
    for (int mu = 0; mu < n; ++mu)
      for (int l = mu; l < n; ++l) {
        Scalar s = scalar_in(base, xs);
        gtm[k][mu][l] = s;
        gtm[k][l][mu] = s;
      }
  return ConnectionData(n, N, std::move(ge), std::move(gtm));
}

}  // namespace msym
