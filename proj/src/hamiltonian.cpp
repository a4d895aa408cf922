#include "msym/hamiltonian.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

#include "msym/linalg.hpp"

namespace msym {

namespace {

long factorial(int k) {
  long f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Contraction-with-omega matrix at degree r: rows indexed by form basis
/// tuples of degree n+1-r, columns by multivector basis tuples of degree r.
RationalMatrix contraction_matrix(const Chart& chart, int r,
                                  const std::vector<IndexTuple>& rows,
                                  const std::vector<IndexTuple>& cols) {
  Form w = omega(chart);
  std::map<IndexTuple, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
  RationalMatrix m(rows.size(), std::vector<Rational>(cols.size(), rat(0)));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    Form c = contract(w, Multivector::basis(chart, cols[j]));
    for (const auto& [idx, coeff] : c.terms())
      m[row_of.at(idx)][j] = coeff.constant_value();
  }
  (void)r;
  return m;
}

}  // namespace

std::vector<IndexTuple> basis_tuples(int dim, int length) {
  std::vector<IndexTuple> out;
  if (length < 0 || length > dim) return out;
  IndexTuple cur;
  // iterative combination enumeration in lexicographic order
  cur.resize(length);
  for (int i = 0; i < length; ++i) cur[i] = i;
  if (length == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(cur);
    int i = length - 1;
    while (i >= 0 && cur[i] == dim - length + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < length; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

KernelBasis kernel_basis(const Chart& chart, int r) {
  if (!chart.is_extended()) throw usage_error("kernel_basis requires an extended chart");
  if (r < 1 || r > chart.dim()) throw usage_error("kernel degree out of range");
  static std::map<std::tuple<int, int, int>, KernelBasis> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(chart.n(), chart.N(), r);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  KernelBasis kb{r, {}};
  std::vector<IndexTuple> cols = basis_tuples(chart.dim(), r);
  if (r > chart.n() + 1) {
    // omega has degree n+1, so every higher-degree multivector contracts to 0
    for (const IndexTuple& t : cols)
      kb.elements.push_back(Multivector::basis(chart, t));
  } else {
    std::vector<IndexTuple> rows = basis_tuples(chart.dim(), chart.n() + 1 - r);
    RationalMatrix m = contraction_matrix(chart, r, rows, cols);
    for (const std::vector<Rational>& v : nullspace(std::move(m))) {
      Multivector xi = Multivector::zero(chart, r);
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (!is_zero(v[j]))
          xi.add_term(cols[j], Scalar::constant(chart.vars(), v[j]));
      kb.elements.push_back(std::move(xi));
    }
  }
  cache.emplace(key, kb);
  return kb;
}

bool is_locally_hamiltonian(const Multivector& X) {
  const Chart& chart = X.chart();
  if (!chart.is_extended()) throw usage_error("requires an extended chart");
  return exterior_derivative(contract(omega(chart), X)).is_zero();
}

bool is_exact_hamiltonian(const Multivector& X) {
  const Chart& chart = X.chart();
  if (!chart.is_extended()) throw usage_error("requires an extended chart");
  return lie_derivative(theta(chart), X).is_zero();
}

HamiltonianPair solve_hamiltonian_field(const Form& f) {
  const Chart& chart = f.chart();
  if (!chart.is_extended()) throw usage_error("requires an extended chart");
  int r = chart.n() - f.degree();
  if (r < 1) throw usage_error("form degree too high for a Hamiltonian field");
  std::vector<IndexTuple> rows = basis_tuples(chart.dim(), f.degree() + 1);
  std::vector<IndexTuple> cols = basis_tuples(chart.dim(), r);
  RationalMatrix m = contraction_matrix(chart, r, rows, cols);
  Form df = exterior_derivative(f);
  std::vector<Scalar> rhs;
  rhs.reserve(rows.size());
  for (const IndexTuple& t : rows) rhs.push_back(df.coefficient(t));
  auto sol = solve_linear(std::move(m), std::move(rhs));
  if (!sol)
    throw not_hamiltonian_error("no multivector field X solves i_X omega = df");
  Multivector X = Multivector::zero(chart, r);
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (!(*sol)[j].is_zero()) X.add_term(cols[j], (*sol)[j]);
  return {f, std::move(X)};
}

PoissonClass is_poisson_form(const Form& f) {
  const Chart& chart = f.chart();
  if (!chart.is_extended()) throw usage_error("requires an extended chart");
  if (f.degree() == chart.n()) {
    // The associated "multivector" has degree 0, i.e. it is a constant c
    // with i_c omega = c omega; f is Hamiltonian iff df is a constant
    // multiple of omega (the multicanonical form itself has c = -1).
    Form df = exterior_derivative(f);
    bool ok = df.is_zero();
    if (!ok) {
      Form om = omega(chart);
      const auto& [idx0, c0] = *df.terms().begin();
      Scalar om0 = om.coefficient(idx0);
      if (c0.is_constant() && om0.is_constant() && !om0.is_zero()) {
        Rational c = c0.constant_value() / om0.constant_value();
        ok = df == Scalar::constant(chart.vars(), c) * om;
      }
    }
    if (!ok) return PoissonClass::not_hamiltonian;
  } else if (f.degree() > chart.n()) {
    if (!exterior_derivative(f).is_zero())
      return PoissonClass::not_hamiltonian;
  } else {
    try {
      solve_hamiltonian_field(f);
    } catch (const not_hamiltonian_error&) {
      return PoissonClass::not_hamiltonian;
    }
  }
  bool poisson = true, weak = true;
  for (int k = 1; k <= f.degree() && (poisson || weak); ++k) {
    for (const Multivector& xi : kernel_basis(chart, k).elements) {
      Form c = contract(f, xi);
      if (!c.is_zero()) {
        poisson = false;
        if (!exterior_derivative(c).is_zero()) weak = false;
      }
    }
  }
  if (poisson) return PoissonClass::poisson;
  if (weak) return PoissonClass::weak_poisson;
  return PoissonClass::hamiltonian_only;
}

namespace {

/// Replaces an underflowed zero 0-form by the zero form of the expected
/// degree so graded sums stay well defined.
Form coerce_degree(Form f, const Chart& chart, int degree) {
  if (f.degree() == degree) return f;
  if (f.is_zero()) return Form::zero(chart, degree);
  throw usage_error("internal degree bookkeeping error");
}

int pow_sign(int e) { return e % 2 == 0 ? 1 : -1; }

Form bracket_impl(const HamiltonianPair& a, const HamiltonianPair& b,
                  bool corrected) {
  const Chart& chart = a.f.chart();
  if (b.f.chart() != chart) throw usage_error("chart mismatch in Poisson bracket");
  int r = a.r(), s = b.r();
  int n = chart.n();
  int target = n + 1 - r - s;
  if (target < 0) return Form::zero(chart, 0);
  const Multivector& X = a.X;
  const Multivector& Y = b.X;
  Form w = omega(chart);
  Form main = coerce_degree(
      rat(pow_sign(r * (s - 1))) * contract(contract(w, X), Y), chart, target);
  if (!corrected || target == 0) return main;
  Form inner =
      coerce_degree(rat(pow_sign((r - 1) * (s - 1))) * contract(a.f, Y), chart,
                    target - 1) -
      coerce_degree(contract(b.f, X), chart, target - 1) -
      coerce_degree(
          rat(pow_sign((r - 1) * s)) * contract(contract(theta(chart), X), Y),
          chart, target - 1);
  return main + exterior_derivative(inner);
}

}  // namespace

Form poisson_bracket(const HamiltonianPair& a, const HamiltonianPair& b) {
  auto ca = is_poisson_form(a.f), cb = is_poisson_form(b.f);
  auto ok = [](PoissonClass c) {
    return c == PoissonClass::poisson || c == PoissonClass::weak_poisson;
  };
  if (!ok(ca) || !ok(cb))
    throw usage_error("Poisson bracket requires (weak) Poisson forms");
  return bracket_impl(a, b, true);
}

Form poisson_bracket_uncorrected(const HamiltonianPair& a,
                                 const HamiltonianPair& b) {
  return bracket_impl(a, b, false);
}

HamiltonianPair momentum_map(const Multivector& X) {
  const Chart& chart = X.chart();
  if (!is_exact_hamiltonian(X))
    throw usage_error("momentum map requires an exact Hamiltonian field");
  int r = X.degree();
  Form J = rat(r % 2 == 1 ? 1 : -1) * contract(theta(chart), X);
  return {std::move(J), X};
}

Multivector hamiltonian_field_for_function(const Chart& chart, const Scalar& f) {
  if (!chart.is_extended()) throw usage_error("requires an extended chart");
  if (f.vars() != chart.vars()) throw usage_error("function over a different chart");
  int n = chart.n();
  Multivector X = Multivector::zero(chart, n);
  Rational norm = rat(1, factorial(n - 1));
  Rational norm_n = norm / rat(n);
  IndexTuple perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  IndexTuple idx;
  do {
    int sign = basis_monomial_sign(perm).second;
    // perm = (mu_2 .. mu_n, mu)
    int mu = perm[n - 1];
    IndexTuple tail;  // @x^{mu_2} ^ .. ^ @x^{mu_n}
    for (int k = 0; k < n - 1; ++k) tail.push_back(chart.x_index(perm[k]));
    Rational s = rat(sign);
    // - eps ( df/dx^mu @p - (1/n) df/dp @x^mu ) ^ tail
    Scalar dfx = f.partial(chart.x_index(mu));
    if (!dfx.is_zero()) {
      idx.assign(1, chart.energy_index());
      idx.insert(idx.end(), tail.begin(), tail.end());
      X.add_term(idx, (-(s * norm)) * dfx);
    }
    Scalar dfp = f.partial(chart.energy_index());
    if (!dfp.is_zero()) {
      idx.assign(1, chart.x_index(mu));
      idx.insert(idx.end(), tail.begin(), tail.end());
      X.add_term(idx, (s * norm_n) * dfp);
    }
    // + eps ( df/dp_i^mu @q^i - (1/n) df/dq^i @p_i^mu ) ^ tail
    for (int i = 1; i <= chart.N(); ++i) {
      Scalar dfpi = f.partial(chart.p_index(i, mu));
      if (!dfpi.is_zero()) {
        idx.assign(1, chart.q_index(i));
        idx.insert(idx.end(), tail.begin(), tail.end());
        X.add_term(idx, (s * norm) * dfpi);
      }
      Scalar dfq = f.partial(chart.q_index(i));
      if (!dfq.is_zero()) {
        idx.assign(1, chart.p_index(i, mu));
        idx.insert(idx.end(), tail.begin(), tail.end());
        X.add_term(idx, (-(s * norm_n)) * dfq);
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return X;
}

std::vector<Multivector> de_donder_weyl_field(const Chart& chart,
                                              const Scalar& H) {
  if (!chart.is_extended()) throw usage_error("requires an extended chart");
  if (H.vars() != chart.vars()) throw usage_error("Hamiltonian over a different chart");
  if (H.depends_on(chart.energy_index()))
    throw usage_error("Hamiltonian must not depend on the energy coordinate");
  int n = chart.n();
  Scalar h = -H - Scalar::variable(chart.vars(), chart.energy_index());
  Rational inv_n = rat(1, n);
  std::vector<Multivector> fields;
  for (int mu = 1; mu <= n; ++mu) {
    Multivector X = Multivector::zero(chart, 1);
    X.add_term({chart.x_index(mu)}, Scalar::constant(chart.vars(), rat(-1)));
    Scalar p_coeff = -h.partial(chart.x_index(mu));
    for (int i = 1; i <= chart.N(); ++i) {
      Scalar hq = h.partial(chart.q_index(i));
      Scalar hp = h.partial(chart.p_index(i, mu));
      X.add_term({chart.q_index(i)}, hp);
      X.add_term({chart.p_index(i, mu)}, -(inv_n * hq));
      p_coeff += inv_n * (hq * hp);
    }
    X.add_term({chart.energy_index()}, p_coeff);
    fields.push_back(std::move(X));
  }
  return fields;
}

Multivector canonical_lift(const Chart& chart, const std::vector<Scalar>& v) {
  if (!chart.is_extended()) throw usage_error("requires an extended chart");
  if (v.size() != static_cast<std::size_t>(chart.N()))
    throw usage_error("component count does not match fiber dimension");
  for (const Scalar& c : v) {
    if (c.vars() != chart.vars()) throw usage_error("component over a different chart");
    for (int a = 0; a < chart.dim(); ++a)
      if (!(chart.is_x(a) || chart.is_q(a)) && c.depends_on(a))
        throw usage_error("lifted field must live on E: components depend on (x, q) only");
  }
  Multivector X = Multivector::zero(chart, 1);
  for (int i = 1; i <= chart.N(); ++i) X.add_term({chart.q_index(i)}, v[i - 1]);
  for (int i = 1; i <= chart.N(); ++i) {
    for (int mu = 1; mu <= chart.n(); ++mu) {
      Scalar acc = Scalar::zero(chart.vars());
      for (int j = 1; j <= chart.N(); ++j)
        acc += Scalar::variable(chart.vars(), chart.p_index(j, mu)) *
               v[j - 1].partial(chart.q_index(i));
      X.add_term({chart.p_index(i, mu)}, -acc);
    }
  }
  Scalar e = Scalar::zero(chart.vars());
  for (int j = 1; j <= chart.N(); ++j)
    for (int mu = 1; mu <= chart.n(); ++mu)
      e += Scalar::variable(chart.vars(), chart.p_index(j, mu)) *
           v[j - 1].partial(chart.x_index(mu));
  X.add_term({chart.energy_index()}, -e);
  return X;
}

namespace {

/// Validates total antisymmetry of a coefficient block in its space-time
/// tuple: entries with repeated indices must be zero, and every permutation
/// of a nonzero entry must be present with the matching sign.
void check_block(const std::map<std::vector<int>, Scalar>& entries) {
  for (const auto& [tup, val] : entries) {
    IndexTuple t(tup.begin(), tup.end());
    auto [canon, sign] = basis_monomial_sign(t);
    if (sign == 0) {
      if (!val.is_zero())
        throw usage_error("ansatz block not antisymmetric: repeated index with nonzero value");
      continue;
    }
    std::vector<int> rep(canon.begin(), canon.end());
    auto it = entries.find(rep);
    if (it == entries.end()) {
      if (!val.is_zero())
        throw usage_error("ansatz block not antisymmetric: missing permutation");
      continue;
    }
    Scalar expect = sign == 1 ? it->second : -it->second;
    if (val != expect)
      throw usage_error("ansatz block not antisymmetric: sign mismatch");
  }
}

}  // namespace

Multivector ansatz_multivector(const Chart& chart, const AnsatzCoefficients& c,
                               int r) {
  if (!chart.is_extended()) throw usage_error("requires an extended chart");
  if (r < 1 || r > chart.dim()) throw usage_error("ansatz degree out of range");
  check_block(c.x_block);
  check_block(c.e_block);
  // per-fiber-index antisymmetry for the i-carrying blocks
  for (int i = 1; i <= chart.N(); ++i) {
    std::map<std::vector<int>, Scalar> qi, pi;
    for (const auto& [key, val] : c.q_block)
      if (key.first == i) qi[key.second] = val;
    for (const auto& [key, val] : c.p_block)
      if (key.first == i) pi[key.second] = val;
    check_block(qi);
    check_block(pi);
  }
  Rational inv_r = rat(1, factorial(r));
  Rational inv_r1 = rat(1, factorial(r - 1));
  Multivector X = Multivector::zero(chart, r);
  IndexTuple idx;
  auto x_tail = [&](const std::vector<int>& mus, std::size_t from) {
    IndexTuple t;
    for (std::size_t k = from; k < mus.size(); ++k)
      t.push_back(chart.x_index(mus[k]));
    return t;
  };
  for (const auto& [mus, val] : c.x_block) {
    if (mus.size() != static_cast<std::size_t>(r))
      throw usage_error("x block tuple length must be r");
    X.add_term(x_tail(mus, 0), inv_r * val);
  }
  for (const auto& [key, val] : c.q_block) {
    if (key.second.size() != static_cast<std::size_t>(r - 1))
      throw usage_error("q block tuple length must be r-1");
    idx.assign(1, chart.q_index(key.first));
    IndexTuple t = x_tail(key.second, 0);
    idx.insert(idx.end(), t.begin(), t.end());
    X.add_term(idx, inv_r1 * val);
  }
  for (const auto& [key, val] : c.p_block) {
    if (key.second.size() != static_cast<std::size_t>(r))
      throw usage_error("p block tuple length must be r");
    idx.assign(1, chart.p_index(key.first, key.second[0]));
    IndexTuple t = x_tail(key.second, 1);
    idx.insert(idx.end(), t.begin(), t.end());
    X.add_term(idx, inv_r * val);
  }
  for (const auto& [mus, val] : c.e_block) {
    if (mus.size() != static_cast<std::size_t>(r - 1))
      throw usage_error("energy block tuple length must be r-1");
    idx.assign(1, chart.energy_index());
    IndexTuple t = x_tail(mus, 0);
    idx.insert(idx.end(), t.begin(), t.end());
    X.add_term(idx, inv_r1 * val);
  }
  return X;
}

}  // namespace msym
