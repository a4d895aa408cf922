#include <doctest.h>

#include "msym/chart.hpp"
#include "msym/random_objects.hpp"
#include "msym/scalar.hpp"

using namespace msym;

namespace {
Scalar var(const Chart& c, const std::string& name) {
  return Scalar::variable(c.vars(), name);
}
Scalar cst(const Chart& c, const Rational& r) {
  return Scalar::constant(c.vars(), r);
}
}  // namespace

TEST_CASE("ring arithmetic on chart coordinates") {
  Chart c = Chart::extended(2, 1);
  Scalar q = var(c, "q1"), one = cst(c, rat(1));

  CHECK((q + one) * (q - one) == q * q - one);
  CHECK(var(c, "p1_1") + Scalar::zero(c.vars()) == var(c, "p1_1"));

  Scalar x1q = var(c, "x1") * q;
  // schoolbook multiplication oracle: (x1*q)^2 = x1^2 * q^2
  Scalar expected(c.vars());
  Monomial m(c.vars().size(), 0);
  m[c.x_index(1)] = 2;
  m[c.q_index(1)] = 2;
  expected.add_term(m, rat(1));
  CHECK(x1q * x1q == expected);
}

TEST_CASE("formal partial derivatives") {
  Chart c = Chart::extended(2, 1);
  Scalar q = var(c, "q1"), p11 = var(c, "p1_1"), p12 = var(c, "p1_2");

  CHECK((q * q * p11).partial("q1") == rat(2) * (q * p11));
  CHECK(var(c, "x1").partial("x2").is_zero());
  CHECK((p11 * p12).partial("p1_1") == p12);
  CHECK_THROWS_AS(q.partial("y9"), usage_error);
}

TEST_CASE("exact evaluation") {
  Chart c = Chart::extended(1, 1);  // x1, q1, p1_1, p
  Scalar q = var(c, "q1");
  CHECK((q * q - cst(c, rat(1))).eval({rat(0), rat(3), rat(0), rat(0)}) ==
        rat(8));
  CHECK(Scalar::zero(c.vars()).eval({rat(7), rat(1), rat(2), rat(3)}) ==
        rat(0));
  Scalar s = var(c, "p1_1") + var(c, "x1");
  CHECK(s.eval({rat(1, 3), rat(0), rat(1, 2), rat(0)}) == rat(5, 6));
  CHECK_THROWS_AS(q.eval({rat(1)}), usage_error);
}

TEST_CASE("ring axioms hold exactly on random polynomials") {
  Chart c = Chart::extended(2, 1);
  RandomSource rs(2024);
  for (int t = 0; t < 25; ++t) {
    Scalar a = rs.scalar(c.vars());
    Scalar b = rs.scalar(c.vars());
    Scalar d = rs.scalar(c.vars());
    CHECK((a + b) + d == a + (b + d));
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * b == b * a);
    CHECK(a * (b + d) == a * b + a * d);
  }
}

TEST_CASE("second partials commute") {
  Chart c = Chart::extended(2, 2);
  RandomSource rs(77);
  for (int t = 0; t < 25; ++t) {
    Scalar a = rs.scalar(c.vars());
    int u = rs.uniform(0, c.dim() - 1);
    int v = rs.uniform(0, c.dim() - 1);
    CHECK(a.partial(u).partial(v) == a.partial(v).partial(u));
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  Chart c = Chart::extended(2, 1);
  RandomSource rs(31);
  for (int t = 0; t < 25; ++t) {
    Scalar a = rs.scalar(c.vars());
    Scalar b = rs.scalar(c.vars());
    std::vector<Rational> point;
    for (int i = 0; i < c.dim(); ++i) point.push_back(rs.rational());
    CHECK((a * b).eval(point) == a.eval(point) * b.eval(point));
    CHECK((a + b).eval(point) == a.eval(point) + b.eval(point));
  }
}

TEST_CASE("canonical rendering and renaming") {
  Chart c = Chart::extended(2, 1);
  Scalar s = var(c, "q1") * var(c, "q1") - cst(c, rat(1));
  CHECK(s.render() == "-1 + q1*q1");

  Chart bigger = Chart::extended(2, 2);
  Scalar moved = rename_vars(s, bigger.vars());
  CHECK(moved == Scalar::variable(bigger.vars(), "q1") *
                         Scalar::variable(bigger.vars(), "q1") -
                     Scalar::constant(bigger.vars(), rat(1)));
}
