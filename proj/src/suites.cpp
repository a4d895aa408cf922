#include "msym/suites.hpp"

#include <array>
#include <functional>
#include <initializer_list>
#include <sstream>

#include <nlohmann/json.hpp>

#include "msym/connections.hpp"
#include "msym/hamiltonian.hpp"
#include "msym/linalg.hpp"
#include "msym/multiphase.hpp"
#include "msym/random_objects.hpp"
#include "msym/vertical.hpp"

namespace msym {

namespace {

/// Sums forms that may have underflowed to zero 0-forms of the wrong degree.
Form sum_coerced(const Chart& chart, int target,
                 std::initializer_list<Form> pieces) {
  if (target < 0) target = 0;
  Form acc = Form::zero(chart, target);
  for (const Form& f : pieces) {
    if (f.degree() != target) {
      if (!f.is_zero()) throw usage_error("degree mismatch in identity residual");
      continue;
    }
    acc += f;
  }
  return acc;
}

Multivector sum_coerced_mv(const Chart& chart, int target,
                           std::initializer_list<Multivector> pieces) {
  if (target < 0) target = 0;
  Multivector acc = Multivector::zero(chart, target);
  for (const Multivector& f : pieces) {
    if (f.degree() != target) {
      if (!f.is_zero()) throw usage_error("degree mismatch in identity residual");
      continue;
    }
    acc += f;
  }
  return acc;
}

Rational sign_pow(int e) { return ((e % 2) + 2) % 2 == 0 ? rat(1) : rat(-1); }

struct Runner {
  Chart chart;  // extended C(n, N)
  std::uint64_t seed;
  int trials;
  int max_degree;
  std::vector<IdentityResult>* out;
  std::string chart_label;
  int identity_index = 0;

  std::uint64_t trial_seed(int k, int t) const {
    return seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(k + 1) +
           static_cast<std::uint64_t>(t);
  }

  /// Residual-style identity: fn(rs) must return an exactly zero form or
  /// multivector on every trial.
  template <class Fn>
  void run(const std::string& id, Fn&& fn, int count = 0) {
    int k = identity_index++;
    int reps = count ? count : trials;
    IdentityResult res{id, chart_label, trial_seed(k, 0), true, 0, ""};
    for (int t = 0; t < reps; ++t) {
      std::uint64_t ts = trial_seed(k, t);
      RandomSource rs(ts, max_degree);
      auto residual = fn(rs);
      if (!residual.is_zero()) {
        res.pass = false;
        res.trial_seed = ts;
        res.residual_term_count = static_cast<long>(residual.terms().size());
        res.counterexample = residual.render();
        if (res.counterexample.size() > 240)
          res.counterexample = res.counterexample.substr(0, 240) + "...";
        break;
      }
    }
    out->push_back(std::move(res));
  }

  /// Predicate-style identity: fn(rs) returns an empty string on success or a
  /// failure message.
  template <class Fn>
  void run_check(const std::string& id, Fn&& fn, int count = 0) {
    int k = identity_index++;
    int reps = count ? count : trials;
    IdentityResult res{id, chart_label, trial_seed(k, 0), true, 0, ""};
    for (int t = 0; t < reps; ++t) {
      std::uint64_t ts = trial_seed(k, t);
      RandomSource rs(ts, max_degree);
      std::string msg = fn(rs);
      if (!msg.empty()) {
        res.pass = false;
        res.trial_seed = ts;
        res.counterexample = std::move(msg);
        break;
      }
    }
    out->push_back(std::move(res));
  }
};

std::array<int, 2> degs2(RandomSource& rs, int maxsum, int cap = 3) {
  for (;;) {
    int r = rs.uniform(1, cap), s = rs.uniform(1, cap);
    if (r + s <= maxsum) return {r, s};
  }
}

std::array<int, 3> degs3(RandomSource& rs, int maxsum, int cap = 3) {
  for (;;) {
    int r = rs.uniform(1, cap), s = rs.uniform(1, cap), t = rs.uniform(1, cap);
    if (r + s + t <= maxsum) return {r, s, t};
  }
}

// ---------------------------------------------------------------------------
// Schouten bracket axioms
// ---------------------------------------------------------------------------

void suite_schouten(Runner& R) {
  const Chart chart = R.chart;
  const int dim = chart.dim();

  R.run_check("schouten-degree", [&](RandomSource& rs) -> std::string {
    auto [r, s] = degs2(rs, dim);
    Multivector b = schouten_bracket(rs.multivector(chart, r),
                                     rs.multivector(chart, s));
    if (b.degree() != r + s - 1) return "bracket degree mismatch";
    return "";
  });

  // On vector fields the Schouten bracket is the Lie bracket; compare against
  // the component formula [X,Y]^b = X^a da Y^b - Y^a da X^b.
  R.run("schouten-lie-bracket", [&](RandomSource& rs) {
    Multivector X = rs.multivector(chart, 1), Y = rs.multivector(chart, 1);
    Multivector oracle = Multivector::zero(chart, 1);
    for (int b = 0; b < dim; ++b) {
      Scalar c = Scalar::zero(chart.vars());
      for (int a = 0; a < dim; ++a) {
        c += X.coefficient({a}) * Y.coefficient({b}).partial(a);
        c -= Y.coefficient({a}) * X.coefficient({b}).partial(a);
      }
      oracle.add_term({b}, c);
    }
    return schouten_bracket(X, Y) - oracle;
  });

  R.run("schouten-antisymmetry", [&](RandomSource& rs) {
    auto [r, s] = degs2(rs, dim);
    Multivector X = rs.multivector(chart, r), Y = rs.multivector(chart, s);
    return schouten_bracket(Y, X) +
           sign_pow((r - 1) * (s - 1)) * schouten_bracket(X, Y);
  });

  R.run("schouten-leibniz-right", [&](RandomSource& rs) {
    auto [r, s, t] = degs3(rs, dim);
    Multivector X = rs.multivector(chart, r), Y = rs.multivector(chart, s),
                Z = rs.multivector(chart, t);
    return schouten_bracket(X, wedge(Y, Z)) -
           wedge(schouten_bracket(X, Y), Z) -
           sign_pow((r - 1) * s) * wedge(Y, schouten_bracket(X, Z));
  });

  R.run("schouten-leibniz-left", [&](RandomSource& rs) {
    auto [r, s, t] = degs3(rs, dim);
    Multivector X = rs.multivector(chart, r), Y = rs.multivector(chart, s),
                Z = rs.multivector(chart, t);
    return schouten_bracket(wedge(X, Y), Z) -
           sign_pow((t - 1) * s) * wedge(schouten_bracket(X, Z), Y) -
           wedge(X, schouten_bracket(Y, Z));
  });

  R.run("schouten-jacobi", [&](RandomSource& rs) {
    auto [r, s, t] = degs3(rs, dim);
    Multivector X = rs.multivector(chart, r), Y = rs.multivector(chart, s),
                Z = rs.multivector(chart, t);
    return sign_pow((r - 1) * (t - 1)) *
               schouten_bracket(X, schouten_bracket(Y, Z)) +
           sign_pow((s - 1) * (r - 1)) *
               schouten_bracket(Y, schouten_bracket(Z, X)) +
           sign_pow((t - 1) * (s - 1)) *
               schouten_bracket(Z, schouten_bracket(X, Y));
  });
}

// ---------------------------------------------------------------------------
// Exterior/Lie calculus identities
// ---------------------------------------------------------------------------

void suite_calculus(Runner& R) {
  const Chart chart = R.chart;
  const int dim = chart.dim();

  R.run("d-squared", [&](RandomSource& rs) {
    Form a = rs.form(chart, rs.uniform(0, std::min(4, dim)));
    return exterior_derivative(exterior_derivative(a));
  });

  R.run("lie-d-commute", [&](RandomSource& rs) {
    int r = rs.uniform(1, 3);
    int a = rs.uniform(0, std::min(dim, r + 2));
    Form alpha = rs.form(chart, a);
    Multivector X = rs.multivector(chart, r);
    return sum_coerced(chart, a - r + 2,
                       {exterior_derivative(lie_derivative(alpha, X)),
                        -(sign_pow(r - 1) *
                          lie_derivative(exterior_derivative(alpha), X))});
  });

  R.run("contraction-order", [&](RandomSource& rs) {
    auto [r, s] = degs2(rs, dim);
    int a = rs.uniform(r + s, std::min(dim, r + s + 2));
    Form alpha = rs.form(chart, a);
    Multivector X = rs.multivector(chart, r), Y = rs.multivector(chart, s);
    return contract(alpha, wedge(X, Y)) - contract(contract(alpha, X), Y);
  });

  R.run("contraction-bracket", [&](RandomSource& rs) {
    auto [r, s] = degs2(rs, dim);
    int a = rs.uniform(std::max(0, r + s - 1), std::min(dim, r + s + 1));
    Form alpha = rs.form(chart, a);
    Multivector X = rs.multivector(chart, r), Y = rs.multivector(chart, s);
    return sum_coerced(
        chart, a - r - s + 1,
        {contract(alpha, schouten_bracket(X, Y)),
         -(sign_pow((r - 1) * s) * lie_derivative(contract(alpha, Y), X)),
         contract(lie_derivative(alpha, X), Y)});
  });

  R.run("lie-bracket-commutator", [&](RandomSource& rs) {
    auto [r, s] = degs2(rs, dim);
    int a = rs.uniform(std::max(0, r + s - 2), std::min(dim, r + s + 1));
    Form alpha = rs.form(chart, a);
    Multivector X = rs.multivector(chart, r), Y = rs.multivector(chart, s);
    return sum_coerced(
        chart, a - r - s + 2,
        {lie_derivative(alpha, schouten_bracket(X, Y)),
         -(sign_pow((r - 1) * (s - 1)) *
           lie_derivative(lie_derivative(alpha, Y), X)),
         lie_derivative(lie_derivative(alpha, X), Y)});
  });

  R.run("lie-wedge", [&](RandomSource& rs) {
    auto [r, s] = degs2(rs, dim);
    int a = rs.uniform(std::max(0, r + s - 1), std::min(dim, r + s + 1));
    Form alpha = rs.form(chart, a);
    Multivector X = rs.multivector(chart, r), Y = rs.multivector(chart, s);
    return sum_coerced(
        chart, a - r - s + 1,
        {lie_derivative(alpha, wedge(X, Y)),
         -(sign_pow(s) * contract(lie_derivative(alpha, X), Y)),
         -lie_derivative(contract(alpha, X), Y)});
  });
}

// ---------------------------------------------------------------------------
// Multiphase-space structure
// ---------------------------------------------------------------------------

Form dnx(const Chart& chart, const std::vector<int>& mus) {
  IndexTuple t;
  for (int mu : mus) t.push_back(chart.x_index(mu));
  return contract(volume_form(chart), Multivector::basis(chart, t));
}

/// Random invertible integer matrix with entries in [-2, 2].
RationalMatrix random_invertible(RandomSource& rs, int n) {
  for (;;) {
    RationalMatrix m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[i][j] = rat(rs.uniform(-2, 2));
    if (!is_zero(determinant(m))) return m;
  }
}

CoordinateChange random_affine_change(RandomSource& rs, const Chart& chart) {
  const Vars& vars = chart.vars();
  int n = chart.n(), N = chart.N();
  RationalMatrix A = random_invertible(rs, n);
  RationalMatrix Ainv = *matrix_inverse(A);
  RationalMatrix B = random_invertible(rs, N);
  RationalMatrix Binv = *matrix_inverse(B);
  std::vector<Rational> a(n), c(N);
  RationalMatrix C(N, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) a[i] = rs.rational();
  for (int k = 0; k < N; ++k) {
    c[k] = rs.rational();
    for (int i = 0; i < n; ++i) C[k][i] = rat(rs.uniform(-2, 2));
  }
  std::vector<Scalar> x_map, q_map, x_inv, q_inv;
  for (int mu = 0; mu < n; ++mu) {
    Scalar fwd = Scalar::constant(vars, a[mu]);
    Scalar inv = Scalar::zero(vars);
    for (int nu = 0; nu < n; ++nu) {
      fwd += A[mu][nu] * Scalar::variable(vars, chart.x_index(nu + 1));
      inv += Ainv[mu][nu] *
             (Scalar::variable(vars, chart.x_index(nu + 1)) -
              Scalar::constant(vars, a[nu]));
    }
    x_map.push_back(std::move(fwd));
    x_inv.push_back(std::move(inv));
  }
  for (int k = 0; k < N; ++k) {
    Scalar fwd = Scalar::constant(vars, c[k]);
    for (int l = 0; l < N; ++l)
      fwd += B[k][l] * Scalar::variable(vars, chart.q_index(l + 1));
    for (int nu = 0; nu < n; ++nu)
      fwd += C[k][nu] * Scalar::variable(vars, chart.x_index(nu + 1));
    q_map.push_back(std::move(fwd));
  }
  for (int k = 0; k < N; ++k) {
    Scalar inv = Scalar::zero(vars);
    for (int l = 0; l < N; ++l) {
      Scalar inner = Scalar::variable(vars, chart.q_index(l + 1)) -
                     Scalar::constant(vars, c[l]);
      for (int nu = 0; nu < n; ++nu) inner -= C[l][nu] * x_inv[nu];
      inv += Binv[k][l] * inner;
    }
    q_inv.push_back(std::move(inv));
  }
  return CoordinateChange(chart, std::move(x_map), std::move(q_map),
                          std::move(x_inv), std::move(q_inv));
}

void suite_multiphase(Runner& R) {
  const Chart chart = R.chart;
  const int n = chart.n();

  R.run_check(
      "volume-contraction",
      [&](RandomSource&) -> std::string {
        for (int r = 1; r <= std::min(3, n); ++r) {
          std::vector<IndexTuple> tuples = basis_tuples(n, r);
          for (const IndexTuple& zero_based : tuples) {
            std::vector<int> mus;
            for (int z : zero_based) mus.push_back(z + 1);
            for (int kappa = 1; kappa <= n; ++kappa) {
              Form lhs = wedge(Form::basis(chart, {chart.x_index(kappa)}),
                               dnx(chart, mus));
              Form rhs = Form::zero(chart, n - r + 1);
              for (int p = 1; p <= r; ++p) {
                if (mus[p - 1] != kappa) continue;
                std::vector<int> rest;
                for (int j = 0; j < r; ++j)
                  if (j != p - 1) rest.push_back(mus[j]);
                rhs += sign_pow(r - p) * dnx(chart, rest);
              }
              if (sum_coerced(chart, n - r + 1, {lhs, -rhs}).is_zero())
                continue;
              std::ostringstream os;
              os << "failed at kappa=" << kappa << " r=" << r;
              return os.str();
            }
          }
        }
        return "";
      },
      1);

  Form th = theta(chart), om = omega(chart);
  Multivector sg = sigma(chart);

  R.run("euler-theta", [&](RandomSource&) { return lie_derivative(th, sg) - th; }, 1);
  R.run("euler-omega", [&](RandomSource&) { return lie_derivative(om, sg) - om; }, 1);
  R.run("euler-contract-theta", [&](RandomSource&) { return contract(th, sg); }, 1);
  R.run("euler-contract-omega", [&](RandomSource&) { return contract(om, sg) + th; }, 1);
  R.run("omega-potential", [&](RandomSource&) { return om + exterior_derivative(th); }, 1);
  R.run("omega-closed", [&](RandomSource&) { return exterior_derivative(om); }, 1);

  R.run_check(
      "omega-nondegenerate",
      [&](RandomSource&) -> std::string {
        return kernel_basis(chart, 1).elements.empty()
                   ? ""
                   : "omega has a nonzero vector kernel";
      },
      1);

  R.run("naturality-theta", [&](RandomSource& rs) {
    CoordinateChange change = random_affine_change(rs, chart);
    return pullback_form(change, th) - th;
  }, std::min(R.trials, 10));

  R.run("naturality-omega", [&](RandomSource& rs) {
    CoordinateChange change = random_affine_change(rs, chart);
    return pullback_form(change, om) - om;
  }, std::min(R.trials, 10));
}

// ---------------------------------------------------------------------------
// Hamiltonian forms and the Poisson bracket
// ---------------------------------------------------------------------------

/// Kernel-valued multivector with polynomial coefficients (zero when the
/// degree-k kernel is trivial).
Multivector random_kernel_field(RandomSource& rs, const Chart& chart, int k) {
  KernelBasis kb = kernel_basis(chart, k);
  Multivector xi = Multivector::zero(chart, k);
  if (kb.elements.empty()) return xi;
  for (int t = 0; t < 2; ++t) {
    const Multivector& e =
        kb.elements[rs.uniform(0, static_cast<int>(kb.elements.size()) - 1)];
    xi += rs.scalar(chart.vars()) * e;
  }
  return xi;
}

/// Right-hand side of the bracket definition written through Lie derivatives:
///   {f,g} = -L_X g + (-1)^{(r-1)(s-1)} L_Y f - (-1)^{(r-1)s} L_{X ^ Y} theta.
Form bracket_via_lie(const Chart& chart, const HamiltonianPair& a,
                     const HamiltonianPair& b) {
  int r = a.r(), s = b.r(), n = chart.n();
  return sum_coerced(
      chart, n + 1 - r - s,
      {-lie_derivative(b.f, a.X),
       sign_pow((r - 1) * (s - 1)) * lie_derivative(a.f, b.X),
       -(sign_pow((r - 1) * s) *
         lie_derivative(theta(chart), wedge(a.X, b.X)))});
}

/// Hamiltonian pair for {g, h}: the bracket form together with the Schouten
/// bracket field [Z, Y] it corresponds to.
HamiltonianPair bracket_pair(const HamiltonianPair& b, const HamiltonianPair& c) {
  return {poisson_bracket(b, c), schouten_bracket(c.X, b.X)};
}

void suite_poisson(Runner& R) {
  const Chart chart = R.chart;
  const int n = chart.n();
  Form th = theta(chart), om = omega(chart);

  R.run("hamiltonian-schouten", [&](RandomSource& rs) {
    auto [r, s] = degs2(rs, n + 2, std::min(3, n + 1));
    Multivector X = rs.locally_hamiltonian(chart, r),
                Y = rs.locally_hamiltonian(chart, s);
    Form lhs = contract(om, schouten_bracket(X, Y));
    Form rhs = exterior_derivative(contract(contract(om, Y), X));
    return sum_coerced(chart, n + 2 - r - s,
                       {lhs, -(sign_pow((r - 1) * s) * rhs)});
  });

  R.run("kernel-ideal", [&](RandomSource& rs) {
    int k = rs.uniform(2, std::min(3, chart.dim()));
    int r = rs.uniform(1, std::min(3, n + 1));
    Multivector xi = random_kernel_field(rs, chart, k);
    Multivector X = rs.locally_hamiltonian(chart, r);
    return contract(om, schouten_bracket(xi, X));
  });

  R.run("bracket-definitions-agree", [&](RandomSource& rs) {
    HamiltonianPair a = rs.poisson_pair(chart), b = rs.poisson_pair(chart);
    return sum_coerced(chart, n + 1 - a.r() - b.r(),
                       {poisson_bracket(a, b), -bracket_via_lie(chart, a, b)});
  });

  R.run("bracket-antisymmetry", [&](RandomSource& rs) {
    HamiltonianPair a = rs.poisson_pair(chart), b = rs.poisson_pair(chart);
    int r = a.r(), s = b.r();
    return sum_coerced(chart, n + 1 - r - s,
                       {poisson_bracket(b, a),
                        sign_pow((r - 1) * (s - 1)) * poisson_bracket(a, b)});
  });

  R.run("bracket-derivative", [&](RandomSource& rs) {
    HamiltonianPair a = rs.poisson_pair(chart), b = rs.poisson_pair(chart);
    return sum_coerced(chart, n + 2 - a.r() - b.r(),
                       {exterior_derivative(poisson_bracket(a, b)),
                        -contract(om, schouten_bracket(b.X, a.X))});
  });

  R.run("bracket-kernel-invariance", [&](RandomSource& rs) {
    HamiltonianPair a = rs.poisson_pair(chart), b = rs.poisson_pair(chart);
    Multivector xi = random_kernel_field(rs, chart, a.r());
    HamiltonianPair shifted{a.f, a.X + xi};
    return sum_coerced(chart, n + 1 - a.r() - b.r(),
                       {poisson_bracket(shifted, b), -poisson_bracket(a, b)});
  });

  R.run("bracket-jacobi", [&](RandomSource& rs) {
    HamiltonianPair a = rs.poisson_pair(chart), b = rs.poisson_pair(chart),
                    c = rs.poisson_pair(chart);
    int r = a.r(), s = b.r(), t = c.r();
    Form j1 = poisson_bracket(a, bracket_pair(b, c));
    Form j2 = poisson_bracket(b, bracket_pair(c, a));
    Form j3 = poisson_bracket(c, bracket_pair(a, b));
    return sum_coerced(chart, n + 2 - r - s - t,
                       {sign_pow((r - 1) * (t - 1)) * j1,
                        sign_pow((s - 1) * (r - 1)) * j2,
                        sign_pow((t - 1) * (s - 1)) * j3});
  });

  // Negative control: without the exact correction terms the bracket must
  // violate the graded Jacobi identity on some generated triple.
  R.run_check(
      "jacobi-uncorrected-fails",
      [&](RandomSource& rs) -> std::string {
        for (int t0 = 0; t0 < std::max(R.trials, 10); ++t0) {
          HamiltonianPair a = momentum_map(rs.exact_hamiltonian(chart, 1));
          HamiltonianPair b = momentum_map(rs.exact_hamiltonian(chart, 1));
          HamiltonianPair c = momentum_map(rs.exact_hamiltonian(chart, 1));
          int r = a.r(), s = b.r(), t = c.r();
          auto pair_unc = [&](const HamiltonianPair& u,
                              const HamiltonianPair& v) -> HamiltonianPair {
            return {poisson_bracket_uncorrected(u, v),
                    schouten_bracket(v.X, u.X)};
          };
          Form j1 = poisson_bracket_uncorrected(a, pair_unc(b, c));
          Form j2 = poisson_bracket_uncorrected(b, pair_unc(c, a));
          Form j3 = poisson_bracket_uncorrected(c, pair_unc(a, b));
          Form resid = sum_coerced(chart, n + 2 - r - s - t,
                                   {sign_pow((r - 1) * (t - 1)) * j1,
                                    sign_pow((s - 1) * (r - 1)) * j2,
                                    sign_pow((t - 1) * (s - 1)) * j3});
          if (!resid.is_zero()) return "";
        }
        return "uncorrected bracket unexpectedly satisfied Jacobi on all "
               "generated triples";
      },
      1);

  R.run("lemma-cyclic-omega", [&](RandomSource& rs) {
    auto [r, s, t] = degs3(rs, n + 3, std::min(3, n + 1));
    Multivector X = rs.locally_hamiltonian(chart, r),
                Y = rs.locally_hamiltonian(chart, s),
                Z = rs.locally_hamiltonian(chart, t);
    auto piece = [&](const Multivector& A, const Multivector& B,
                     const Multivector& C, int dA, int dC) {
      return sign_pow(dA * (dC - 1)) *
             contract(exterior_derivative(contract(contract(om, C), B)), A);
    };
    Form rhs = sign_pow(r * t) * exterior_derivative(contract(
                   contract(contract(om, Z), Y), X));
    return sum_coerced(chart, n + 2 - r - s - t,
                       {piece(X, Y, Z, r, t), piece(Y, Z, X, s, r),
                        piece(Z, X, Y, t, s), -rhs});
  });

  R.run("lemma-cyclic-theta", [&](RandomSource& rs) {
    auto [r, s, t] = degs3(rs, n + 3, std::min(3, n + 1));
    Multivector X = rs.locally_hamiltonian(chart, r),
                Y = rs.locally_hamiltonian(chart, s),
                Z = rs.locally_hamiltonian(chart, t);
    auto piece = [&](const Multivector& A, const Multivector& B,
                     const Multivector& C, int dA, int dB, int dC) {
      Form first = sign_pow(dA * (dC - 1)) *
                   contract(exterior_derivative(contract(contract(th, C), B)), A);
      Form second = sign_pow(dA * (dC - 1) + dB) *
                    contract(contract(exterior_derivative(contract(th, C)), B), A);
      return sum_coerced(A.chart(), th.degree() + 1 - dA - dB - dC,
                         {first, -second});
    };
    Form rhs1 = sign_pow(r * t + r + s + t) *
                contract(contract(contract(om, Z), Y), X);
    Form rhs2 = sign_pow(r * t) * exterior_derivative(contract(
                    contract(contract(th, Z), Y), X));
    return sum_coerced(chart, n + 1 - r - s - t,
                       {piece(X, Y, Z, r, s, t), piece(Y, Z, X, s, t, r),
                        piece(Z, X, Y, t, r, s), -rhs1, -rhs2});
  });

  R.run("exact-closure", [&](RandomSource& rs) {
    int dx = n >= 2 ? rs.uniform(1, 2) : 1;
    int dy = n >= 2 ? rs.uniform(1, 2) : 1;
    Multivector X = rs.exact_hamiltonian(chart, dx),
                Y = rs.exact_hamiltonian(chart, dy);
    return lie_derivative(th, schouten_bracket(X, Y));
  });

  R.run("momentum-map-derivative", [&](RandomSource& rs) {
    int d = n >= 2 ? rs.uniform(1, 2) : 1;
    Multivector X = rs.exact_hamiltonian(chart, d);
    HamiltonianPair j = momentum_map(X);
    return sum_coerced(chart, n + 1 - d,
                       {exterior_derivative(j.f), -contract(om, X)});
  });

  R.run("momentum-map-bracket", [&](RandomSource& rs) {
    int dx = n >= 2 ? rs.uniform(1, 2) : 1;
    int dy = n >= 2 ? rs.uniform(1, 2) : 1;
    Multivector X = rs.exact_hamiltonian(chart, dx),
                Y = rs.exact_hamiltonian(chart, dy);
    HamiltonianPair jx = momentum_map(X), jy = momentum_map(Y);
    Form lhs = poisson_bracket(jx, jy);
    Form rhs = momentum_map(schouten_bracket(Y, X)).f;
    return sum_coerced(chart, n + 1 - dx - dy, {lhs, -rhs});
  });

  R.run("function-field", [&](RandomSource& rs) {
    Scalar f = rs.scalar(chart.vars());
    Multivector X = hamiltonian_field_for_function(chart, f);
    return contract(om, X) -
           exterior_derivative(Form::from_scalar(chart, f));
  });

  R.run_check("function-field-kernel-agreement",
              [&](RandomSource& rs) -> std::string {
    Scalar f = rs.scalar(chart.vars());
    Multivector explicit_field = hamiltonian_field_for_function(chart, f);
    HamiltonianPair solved =
        solve_hamiltonian_field(Form::from_scalar(chart, f));
    Multivector diff = explicit_field - solved.X;
    // Express the difference in the constant kernel basis by an exact linear
    // solve with polynomial right-hand sides.
    KernelBasis kb = kernel_basis(chart, n);
    std::vector<IndexTuple> tuples = basis_tuples(chart.dim(), n);
    RationalMatrix m(tuples.size(),
                     std::vector<Rational>(kb.elements.size(), rat(0)));
    std::vector<Scalar> b;
    for (std::size_t row = 0; row < tuples.size(); ++row) {
      for (std::size_t colk = 0; colk < kb.elements.size(); ++colk) {
        Scalar c = kb.elements[colk].coefficient(tuples[row]);
        m[row][colk] = c.constant_value();
      }
      b.push_back(diff.coefficient(tuples[row]));
    }
    if (!solve_linear(std::move(m), std::move(b)))
      return "field difference is outside the kernel span";
    return "";
  });

  R.run("de-donder-weyl", [&](RandomSource& rs) {
    std::vector<int> allowed;
    for (int c = 0; c < chart.dim(); ++c)
      if (!chart.is_energy(c)) allowed.push_back(c);
    Scalar H = rs.scalar_in(chart.vars(), allowed);
    std::vector<Multivector> Xs = de_donder_weyl_field(chart, H);
    Multivector X = Xs[0];
    for (std::size_t i = 1; i < Xs.size(); ++i) X = wedge(X, Xs[i]);
    Scalar h = -H - Scalar::variable(chart.vars(), chart.energy_index());
    return contract(om, X) -
           exterior_derivative(Form::from_scalar(chart, h));
  }, std::min(R.trials, 10));
}

// ---------------------------------------------------------------------------
// Vertical calculus, Hodge star and the bullet product
// ---------------------------------------------------------------------------

/// Horizontal form of any degree up to n (not necessarily Hamiltonian), with
/// (x, q)-dependent coefficients.
Form random_horizontal(RandomSource& rs, const Chart& chart, int degree) {
  Form f = Form::zero(chart, degree);
  std::vector<IndexTuple> tuples = basis_tuples(chart.n(), degree);
  for (int t = 0; t < 2; ++t)
    f.add_term(tuples[rs.uniform(0, static_cast<int>(tuples.size()) - 1)],
               rs.scalar_xq(chart));
  return f;
}

void suite_vertical(Runner& R) {
  const Chart chart = R.chart;
  const Chart ordinary = Chart::ordinary(chart.n(), chart.N());
  const int n = chart.n();
  const ConnectionData conn0 = ConnectionData::zero(chart.n(), chart.N());

  HorizontalMetric flat = HorizontalMetric::euclidean(n);
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, rat(0)));
  for (int i = 0; i < n; ++i) g[i][i] = rat((i % 2 == 0) ? 1 : 4);
  if (n == 1) g[0][0] = rat(4);
  HorizontalMetric stretched{g};

  R.run("horizontal-roundtrip", [&](RandomSource& rs) {
    Form f = rs.horizontal_poisson(chart, rs.uniform(0, n - 1));
    return project_eta(restrict_to_ordinary(f), chart) - f;
  });

  R.run("vertical-bracket-agreement", [&](RandomSource& rs) {
    Form f = rs.horizontal_poisson(chart, n - 1);
    Form g2 = rs.horizontal_poisson(chart, rs.uniform(n - 1 - std::min(n - 1, 1), n - 1));
    HamiltonianPair pf = solve_hamiltonian_field(f),
                    pg = solve_hamiltonian_field(g2);
    Form ext = poisson_bracket(pf, pg);
    Form ft = restrict_to_ordinary(f), gt = restrict_to_ordinary(g2);
    VerticalPair va{ft, solve_vertical_field(ft, conn0)};
    VerticalPair vb{gt, solve_vertical_field(gt, conn0)};
    Form vbr = vertical_bracket(va, vb, conn0);
    return sum_coerced(chart, n + 1 - pf.r() - pg.r(),
                       {project_eta(vbr, chart), -ext});
  });

  R.run("vertical-derivative-squared", [&](RandomSource& rs) {
    int a = rs.uniform(0, std::max(0, std::min(4, ordinary.dim() - 2)));
    Form f = rs.form(ordinary, a);  // coframe representation, any coefficients
    return d_vertical_coframe(d_vertical_coframe(f));
  }, std::max(R.trials, 20));

  R.run("vertical-derivative-flat", [&](RandomSource& rs) {
    Form f = Form::zero(ordinary, rs.uniform(0, n - 1));
    {
      Form h = rs.horizontal_poisson(chart, f.degree());
      f = restrict_to_ordinary(h);
    }
    // Oracle: with zero connection data, d^V is the fiber-direction part of
    // the coordinate exterior derivative.
    Form oracle = Form::zero(ordinary, f.degree() + 1);
    for (const auto& [idx, c] : f.terms()) {
      for (int v = 0; v < ordinary.dim(); ++v) {
        if (ordinary.is_x(v)) continue;
        Scalar dc = c.partial(v);
        if (dc.is_zero()) continue;
        IndexTuple t{v};
        t.insert(t.end(), idx.begin(), idx.end());
        oracle.add_term(t, dc);
      }
    }
    return d_vertical(f, conn0) - oracle;
  });

  R.run("vertical-solver", [&](RandomSource& rs) {
    Form f = restrict_to_ordinary(
        rs.horizontal_poisson(chart, rs.uniform(0, n - 1)));
    Multivector X = solve_vertical_field(f, conn0);
    return contract(omega_vertical(conn0, ordinary), X) - d_vertical(f, conn0);
  });

  R.run("hodge-roundtrip", [&](RandomSource& rs) {
    const HorizontalMetric& m = rs.uniform(0, 1) ? flat : stretched;
    Form f = random_horizontal(rs, chart, rs.uniform(0, n));
    return hodge_star_inverse(hodge_star(f, m), m) - f;
  });

  R.run("hodge-involution", [&](RandomSource& rs) {
    const HorizontalMetric& m = rs.uniform(0, 1) ? flat : stretched;
    int k = rs.uniform(0, n);
    Form f = random_horizontal(rs, chart, k);
    Rational s = rat(m.sign()) * sign_pow(k * (n - k));
    return hodge_star(hodge_star(f, m), m) - s * f;
  });

  R.run("bullet-associativity", [&](RandomSource& rs) {
    const HorizontalMetric& m = rs.uniform(0, 1) ? flat : stretched;
    int a = rs.uniform(0, n), b = rs.uniform(0, n), c = rs.uniform(0, n);
    Form f = random_horizontal(rs, chart, a),
         g2 = random_horizontal(rs, chart, b),
         h = random_horizontal(rs, chart, c);
    return sum_coerced(chart, a + b + c - 2 * n,
                       {bullet_product(bullet_product(f, g2, m), h, m),
                        -bullet_product(f, bullet_product(g2, h, m), m)});
  });

  R.run("bullet-leibniz", [&](RandomSource& rs) {
    if (n < 2) return Form::zero(chart, 0);
    const HorizontalMetric& m = rs.uniform(0, 1) ? flat : stretched;
    Form f = rs.horizontal_poisson(chart, n - 1);
    Form g2 = rs.horizontal_poisson(chart, n - 1);
    Form h = rs.horizontal_poisson(chart, n - 1);
    HamiltonianPair pf = solve_hamiltonian_field(f);
    Form gh = bullet_product(g2, h, m);
    HamiltonianPair pgh = solve_hamiltonian_field(gh);
    Form lhs = poisson_bracket(pf, pgh);
    Form t1 = bullet_product(
        poisson_bracket(pf, solve_hamiltonian_field(g2)), h, m);
    Form t2 = bullet_product(
        g2, poisson_bracket(pf, solve_hamiltonian_field(h)), m);
    // r = 1 and s = 1 here, so the graded sign (-1)^{(r-1)s} is +1.
    return sum_coerced(chart, n - 2, {lhs, -t1, -t2});
  });

  R.run_check(
      "horizontality-grades",
      [&](RandomSource&) -> std::string {
        Form th = theta(chart);
        if (horizontality_grade(th, Projection::source) != n - 1)
          return "theta source grade";
        if (horizontality_grade(th, Projection::target) != n)
          return "theta target grade";
        Multivector sg = sigma(chart);
        if (horizontality_grade(sg, Projection::source) != 1)
          return "sigma source verticality";
        if (horizontality_grade(sg, Projection::target) != 1)
          return "sigma target verticality";
        return "";
      },
      1);
}

// ---------------------------------------------------------------------------
// Induced connections
// ---------------------------------------------------------------------------

ConnectionData add_connections(const ConnectionData& a, const ConnectionData& b) {
  int n = a.n(), N = a.N();
  std::vector<std::vector<Scalar>> ge(N, std::vector<Scalar>(n, Scalar::zero(a.vars())));
  for (int i = 1; i <= N; ++i)
    for (int mu = 1; mu <= n; ++mu)
      ge[i - 1][mu - 1] = a.gamma_E(i, mu) + b.gamma_E(i, mu);
  std::vector<std::vector<std::vector<Scalar>>> gtm(
      n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(a.vars()))));
  for (int k = 1; k <= n; ++k)
    for (int mu = 1; mu <= n; ++mu)
      for (int l = 1; l <= n; ++l)
        gtm[k - 1][mu - 1][l - 1] = a.gamma_TM(k, mu, l) + b.gamma_TM(k, mu, l);
  return ConnectionData(n, N, std::move(ge), std::move(gtm));
}

void suite_connections(Runner& R) {
  const int n = R.chart.n(), N = R.chart.N();

  R.run_check("duality", [&](RandomSource& rs) -> std::string {
    return duality_check(rs.connection(n, N)) ? "" : "duality check failed";
  }, std::min(R.trials, 10));

  R.run_check(
      "zero-connection",
      [&](RandomSource&) -> std::string {
        ConnectionData z = ConnectionData::zero(n, N);
        for (Bundle b : {Bundle::VE, Bundle::VstarE, Bundle::piTM,
                         Bundle::piTstarM, Bundle::piVolM, Bundle::JvecE,
                         Bundle::JE, Bundle::OrdinaryMultiphase,
                         Bundle::ExtendedMultiphase}) {
          InducedConnection ic = induce(z, b);
          for (const auto& [name, rows] : ic.coefficients)
            for (const Scalar& s : rows)
              if (!s.is_zero())
                return std::string("nonzero coefficient for ") + name + " on " +
                       bundle_name(b);
        }
        return "";
      },
      1);

  R.run_check("jet-affine-shift", [&](RandomSource& rs) -> std::string {
    ConnectionData conn = rs.connection(n, N);
    InducedConnection lin = induce(conn, Bundle::JvecE);
    InducedConnection aff = induce(conn, Bundle::JE);
    // JE coefficients in the shifted fiber coordinate u + Gamma must equal
    // the linear jet-bundle coefficients in u.
    std::vector<Scalar> images;
    for (std::size_t v = 0; v < aff.vars.size(); ++v)
      images.push_back(Scalar::variable(aff.vars, static_cast<int>(v)));
    for (int k = 1; k <= N; ++k)
      for (int kappa = 1; kappa <= n; ++kappa) {
        std::string name =
            "u" + std::to_string(k) + "_" + std::to_string(kappa);
        int idx = aff.vars.index_of(name);
        images[idx] = images[idx] + rename_vars(conn.gamma_E(k, kappa), aff.vars);
      }
    for (const auto& [name, rows] : aff.coefficients)
      for (std::size_t mu = 0; mu < rows.size(); ++mu) {
        Scalar shifted = rows[mu].substitute(aff.vars, images);
        if (shifted != lin.coefficients.at(name)[mu])
          return "mismatch at " + name;
      }
    return "";
  }, std::min(R.trials, 5));

  R.run_check("coframe-multiphase", [&](RandomSource& rs) -> std::string {
    ConnectionData conn = rs.connection(n, N);
    Chart ordinary = Chart::ordinary(n, N);
    VerticalCoframe vc = vertical_coframe(conn, ordinary);
    InducedConnection ic = induce(conn, Bundle::OrdinaryMultiphase);
    for (int i = 1; i <= N; ++i)
      for (int mu = 1; mu <= n; ++mu) {
        const Form& e = vc.e_p[i - 1][mu - 1];
        std::string name = "p" + std::to_string(i) + "_" + std::to_string(mu);
        for (int kappa = 1; kappa <= n; ++kappa) {
          Scalar lhs = e.coefficient({ordinary.x_index(kappa)});
          Scalar rhs = rename_vars(ic.coefficients.at(name)[kappa - 1],
                                   ordinary.vars());
          if (lhs != rhs) return "coefficient mismatch at " + name;
        }
      }
    return "";
  }, std::min(R.trials, 5));

  R.run_check("linearity", [&](RandomSource& rs) -> std::string {
    ConnectionData c1 = rs.connection(n, N), c2 = rs.connection(n, N);
    ConnectionData sum = add_connections(c1, c2);
    for (Bundle b : {Bundle::VE, Bundle::VstarE, Bundle::piTM,
                     Bundle::piTstarM, Bundle::piVolM, Bundle::JvecE,
                     Bundle::OrdinaryMultiphase}) {
      InducedConnection i1 = induce(c1, b), i2 = induce(c2, b),
                        is = induce(sum, b);
      for (const auto& [name, rows] : is.coefficients)
        for (std::size_t mu = 0; mu < rows.size(); ++mu)
          if (rows[mu] != i1.coefficients.at(name)[mu] +
                              i2.coefficients.at(name)[mu])
            return std::string("nonlinear coefficient for ") + name + " on " +
                   bundle_name(b);
    }
    return "";
  }, std::min(R.trials, 5));
}

}  // namespace

bool SuiteReport::all_pass() const {
  for (const IdentityResult& r : identities)
    if (!r.pass) return false;
  return true;
}

std::string SuiteReport::render_text() const {
  std::ostringstream os;
  os << "suite: " << suite << "\n";
  os << "chart: " << chart << "\n";
  os << "seed: " << seed << "\n";
  os << "trials: " << trials << "\n";
  int passed = 0;
  for (const IdentityResult& r : identities) {
    if (r.pass) {
      ++passed;
      os << "  pass  " << r.id << "\n";
    } else {
      os << "  FAIL  " << r.id << "  trial-seed=" << r.trial_seed
         << " residual-terms=" << r.residual_term_count << "\n";
      if (!r.counterexample.empty())
        os << "        counterexample: " << r.counterexample << "\n";
    }
  }
  os << "result: " << (all_pass() ? "PASS" : "FAIL") << " (" << passed << "/"
     << identities.size() << ")\n";
  return os.str();
}

std::string SuiteReport::render_json() const {
  nlohmann::json j;
  j["schema"] = 1;
  j["suite"] = suite;
  j["chart"] = chart;
  j["seed"] = seed;
  j["trials"] = trials;
  j["all-pass"] = all_pass();
  nlohmann::json items = nlohmann::json::array();
  for (const IdentityResult& r : identities) {
    nlohmann::json item;
    item["identity-id"] = r.id;
    item["chart"] = r.chart;
    item["trial-seed"] = r.trial_seed;
    item["status"] = r.pass ? "pass" : "fail";
    item["residual-term-count"] = r.residual_term_count;
    if (!r.counterexample.empty()) item["counterexample"] = r.counterexample;
    items.push_back(std::move(item));
  }
  j["identities"] = std::move(items);
  return j.dump(2) + "\n";
}

SuiteReport run_suite(const std::string& suite, int n, int N,
                      std::uint64_t seed, int trials, int max_degree) {
  if (trials < 1) throw usage_error("trials must be positive");
  SuiteReport report;
  report.suite = suite;
  report.chart = "C(" + std::to_string(n) + "," + std::to_string(N) + ")";
  report.seed = seed;
  report.trials = trials;

  Runner runner{Chart::extended(n, N), seed,          trials,
                max_degree,            &report.identities, report.chart};

  bool matched = false;
  auto want = [&](const char* name) {
    bool w = suite == name || suite == "all";
    matched = matched || suite == name;
    return w;
  };
  if (want("schouten")) suite_schouten(runner);
  if (want("calculus")) suite_calculus(runner);
  if (want("multiphase")) suite_multiphase(runner);
  if (want("poisson")) suite_poisson(runner);
  if (want("vertical")) suite_vertical(runner);
  if (want("connections")) suite_connections(runner);
  if (!matched && suite != "all")
    throw usage_error("unknown suite: " + suite);
  return report;
}

}  // namespace msym
