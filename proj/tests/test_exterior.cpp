#include <doctest.h>

#include "msym/exterior.hpp"
#include "msym/hamiltonian.hpp"
#include "msym/multiphase.hpp"
#include "msym/random_objects.hpp"

using namespace msym;

namespace {
Form d_of(const Chart& c, std::initializer_list<int> idx) {
  return Form::basis(c, IndexTuple(idx));
}
Multivector at(const Chart& c, std::initializer_list<int> idx) {
  return Multivector::basis(c, IndexTuple(idx));
}
}  // namespace

TEST_CASE("wedge basics") {
  Chart c = Chart::extended(2, 1);
  int x1 = c.x_index(1), x2 = c.x_index(2), q = c.q_index(1);

  CHECK(wedge(d_of(c, {x1}), d_of(c, {x2})) == volume_form(c));
  CHECK(wedge(d_of(c, {x1}), d_of(c, {x1})).is_zero());

  Form dq_dx1 = wedge(d_of(c, {q}), d_of(c, {x1}));
  Form canonical(c, 2);
  canonical.add_term({x1, q}, Scalar::constant(c.vars(), rat(-1)));
  CHECK(dq_dx1 == canonical);
}

TEST_CASE("contraction follows the iterated convention") {
  Chart c = Chart::extended(2, 1);
  int x1 = c.x_index(1), x2 = c.x_index(2), q = c.q_index(1),
      p11 = c.p_index(1, 1);

  Form alpha = wedge(wedge(d_of(c, {q}), d_of(c, {p11})), d_of(c, {x2}));
  // oracle: i_{@q ^ @p11} = i_{@p11} i_{@q}
  Form iterated = contract(contract(alpha, at(c, {q})), at(c, {p11}));
  CHECK(contract(alpha, at(c, {q, p11})) == iterated);
  CHECK(contract(alpha, at(c, {q, p11})) == d_of(c, {x2}));

  CHECK(contract(volume_form(c), at(c, {x1})) == volume_form_mu(c, 1));
  CHECK(contract(volume_form(c), at(c, {x2})) == volume_form_mu(c, 2));
  CHECK(contract(wedge(d_of(c, {x1}), d_of(c, {x2})), at(c, {x1})) ==
        d_of(c, {x2}));
}

TEST_CASE("index canonicalization signs") {
  auto [t1, s1] = basis_monomial_sign({2, 1});
  CHECK(t1 == IndexTuple{1, 2});
  CHECK(s1 == -1);
  auto [t2, s2] = basis_monomial_sign({1, 1});
  CHECK(s2 == 0);
  auto [t3, s3] = basis_monomial_sign({3, 1, 2});
  CHECK(t3 == IndexTuple{1, 2, 3});
  CHECK(s3 == 1);
}

TEST_CASE("wedge is associative and supercommutative") {
  Chart c = Chart::extended(2, 1);
  RandomSource rs(555);
  for (int t = 0; t < 25; ++t) {
    int da = rs.uniform(0, 2), db = rs.uniform(0, 2), dc = rs.uniform(0, 1);
    Form a = rs.form(c, da), b = rs.form(c, db), cc = rs.form(c, dc);
    if (da + db + dc <= c.dim())
      CHECK(wedge(wedge(a, b), cc) == wedge(a, wedge(b, cc)));
    Form ba = wedge(b, a);
    CHECK(wedge(a, b) == ((da * db) % 2 == 0 ? ba : -ba));
  }
}

TEST_CASE("contraction against iterated single vectors on decomposables") {
  Chart c = Chart::extended(2, 1);
  RandomSource rs(901);
  for (int t = 0; t < 25; ++t) {
    Form alpha = rs.form(c, rs.uniform(2, 4));
    int a = rs.uniform(0, c.dim() - 1);
    int b = rs.uniform(0, c.dim() - 1);
    if (a == b) b = (b + 1) % c.dim();
    Multivector X = at(c, {a}), Y = at(c, {b});
    CHECK(contract(alpha, wedge(X, Y)) == contract(contract(alpha, X), Y));
  }
}

TEST_CASE("single-vector contraction is a graded derivation") {
  Chart c = Chart::extended(2, 1);
  RandomSource rs(4242);
  for (int t = 0; t < 25; ++t) {
    int da = rs.uniform(1, 2), db = rs.uniform(1, 2);
    Form a = rs.form(c, da), b = rs.form(c, db);
    Multivector V = at(c, {rs.uniform(0, c.dim() - 1)});
    Form lhs = contract(wedge(a, b), V);
    Form rhs = wedge(contract(a, V), b) +
               (da % 2 == 0 ? wedge(a, contract(b, V))
                            : -wedge(a, contract(b, V)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("horizontal cobasis expansion identity, exhaustively for n <= 3") {
  for (int n = 1; n <= 3; ++n) {
    Chart c = Chart::extended(n, 1);
    Form vol = volume_form(c);
    for (int r = 1; r <= n; ++r) {
      for (const IndexTuple& mus : basis_tuples(n, r)) {
        // d^n x_{mu_1..mu_r} via iterated contraction of the volume form
        Multivector mv(c, r);
        mv.add_term(mus, Scalar::constant(c.vars(), rat(1)));
        Form dnx_mus = contract(vol, mv);
        for (int kappa = 1; kappa <= n; ++kappa) {
          Form lhs = wedge(Form::basis(c, {c.x_index(kappa)}), dnx_mus);
          Form rhs = Form::zero(c, n - r + 1);
          for (int p = 1; p <= r; ++p) {
            if (mus[p - 1] != c.x_index(kappa)) continue;
            IndexTuple rest;
            for (int j = 0; j < r; ++j)
              if (j != p - 1) rest.push_back(mus[j]);
            Multivector rest_mv(c, r - 1);
            rest_mv.add_term(rest, Scalar::constant(c.vars(), rat(1)));
            Form piece = contract(vol, rest_mv);
            rhs += (r - p) % 2 == 0 ? piece : -piece;
          }
          if (lhs.is_zero() && rhs.is_zero()) continue;
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("degree underflow and chart mismatch") {
  Chart c = Chart::extended(2, 1);
  Form one_form = d_of(c, {c.q_index(1)});
  Form r = contract(one_form, at(c, {c.x_index(1), c.x_index(2)}));
  CHECK(r.is_zero());
  CHECK(r.degree() == 0);

  Chart other = Chart::extended(2, 2);
  CHECK_THROWS_AS(wedge(one_form, Form::basis(other, {0})), usage_error);
}

TEST_CASE("canonical rendering") {
  Chart c = Chart::extended(2, 1);
  Form th = theta(c);
  CHECK(th.render() ==
        "p*d(x1)^d(x2) + p1_2*d(x1)^d(q1) - p1_1*d(x2)^d(q1)");
  CHECK(Form::zero(c, 2).render() == "0");
}
