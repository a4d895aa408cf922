#include <doctest.h>

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
Scalar var(const Chart& c, const std::string& name) {
  return Scalar::variable(c.vars(), name);
}
}  // namespace

TEST_CASE("multicanonical form in low dimensions") {
  Chart c2 = Chart::extended(2, 1);
  // hand expansion: theta = p11 dq^dx2 - p12 dq^dx1 + p dx1^dx2
  Form expect2 =
      var(c2, "p1_1") * wedge(d_of(c2, {c2.q_index(1)}), d_of(c2, {1})) -
      var(c2, "p1_2") * wedge(d_of(c2, {c2.q_index(1)}), d_of(c2, {0})) +
      var(c2, "p") * wedge(d_of(c2, {0}), d_of(c2, {1}));
  CHECK(theta(c2) == expect2);

  Chart c1 = Chart::extended(1, 1);
  Form expect1 = var(c1, "p1_1") * d_of(c1, {c1.q_index(1)}) +
                 var(c1, "p") * d_of(c1, {c1.x_index(1)});
  CHECK(theta(c1) == expect1);

  CHECK_THROWS_AS(theta(Chart::ordinary(2, 1)), usage_error);
}

TEST_CASE("multisymplectic form equals minus d theta") {
  Chart c2 = Chart::extended(2, 1);
  Form expect2 =
      wedge(wedge(d_of(c2, {c2.q_index(1)}), d_of(c2, {c2.p_index(1, 1)})),
            d_of(c2, {1})) -
      wedge(wedge(d_of(c2, {c2.q_index(1)}), d_of(c2, {c2.p_index(1, 2)})),
            d_of(c2, {0})) -
      wedge(d_of(c2, {c2.energy_index()}), wedge(d_of(c2, {0}), d_of(c2, {1})));
  CHECK(omega(c2) == expect2);
  CHECK(omega(c2) == -exterior_derivative(theta(c2)));

  Chart c1 = Chart::extended(1, 1);
  Form expect1 =
      wedge(d_of(c1, {c1.q_index(1)}), d_of(c1, {c1.p_index(1, 1)})) -
      wedge(d_of(c1, {c1.energy_index()}), d_of(c1, {c1.x_index(1)}));
  CHECK(omega(c1) == expect1);

  Chart c32 = Chart::extended(3, 2);
  CHECK(omega(c32) == -exterior_derivative(theta(c32)));
}

TEST_CASE("scaling vector field") {
  Chart c = Chart::extended(2, 1);
  Multivector expect = var(c, "p1_1") * at(c, {c.p_index(1, 1)}) +
                       var(c, "p1_2") * at(c, {c.p_index(1, 2)}) +
                       var(c, "p") * at(c, {c.energy_index()});
  CHECK(sigma(c) == expect);

  Chart o = Chart::ordinary(2, 1);
  Multivector expect_o =
      Scalar::variable(o.vars(), "p1_1") * at(o, {o.p_index(1, 1)}) +
      Scalar::variable(o.vars(), "p1_2") * at(o, {o.p_index(1, 2)});
  CHECK(sigma(o) == expect_o);

  CHECK(contract(omega(c), sigma(c)) == -theta(c));
}

TEST_CASE("Euler relations on all acceptance charts") {
  for (auto [n, N] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2}}) {
    Chart c = Chart::extended(n, N);
    Form th = theta(c), om = omega(c);
    Multivector sg = sigma(c);
    CHECK(lie_derivative(th, sg) == th);
    CHECK(lie_derivative(om, sg) == om);
    CHECK(contract(th, sg).is_zero());
    CHECK(contract(om, sg) == -th);
  }
}

TEST_CASE("point form") {
  Chart c = Chart::extended(2, 1);
  // coordinates: x1 x2 q1 p1_1 p1_2 p
  Form f1 = phi_form({rat(0), rat(0), rat(0), rat(1), rat(0), rat(0)}, c);
  CHECK(f1 == wedge(d_of(c, {c.q_index(1)}), d_of(c, {1})));

  Form f2 = phi_form({rat(0), rat(0), rat(0), rat(0), rat(0), rat(1)}, c);
  CHECK(f2 == wedge(d_of(c, {0}), d_of(c, {1})));

  std::vector<Rational> pt = {rat(1), rat(-2), rat(3), rat(4), rat(5), rat(6)};
  Form frozen = phi_form(pt, c);
  Form th = theta(c);
  for (const auto& [idx, coeff] : th.terms())
    CHECK(frozen.coefficient(idx).constant_value() == coeff.eval(pt));

  CHECK_THROWS_AS(phi_form({rat(1)}, c), usage_error);
}

TEST_CASE("dual pairings") {
  Chart c = Chart::extended(2, 1);
  PairingResult r = dual_pairing(
      c, {rat(0), rat(0), rat(0), rat(2), rat(0), rat(3)}, {rat(5), rat(0)},
      false);
  CHECK(r.value == rat(13));
  CHECK_FALSE(r.twisted);

  PairingResult z = dual_pairing(
      c, {rat(0), rat(0), rat(0), rat(0), rat(0), rat(0)}, {rat(0), rat(0)},
      true);
  CHECK(z.value == rat(0));
  CHECK(z.twisted);

  Chart o = Chart::ordinary(2, 1);
  PairingResult lin = dual_pairing(
      o, {rat(0), rat(0), rat(0), rat(1), rat(1)}, {rat(1), rat(1)}, false);
  CHECK(lin.value == rat(2));
}

TEST_CASE("momentum transformation laws") {
  Chart c = Chart::extended(2, 1);
  CoordinateChange id = CoordinateChange::identity(c);
  std::vector<Rational> pt = {rat(1), rat(2), rat(3), rat(5), rat(7), rat(11)};
  CHECK(transform_momenta(id, pt, true) == pt);

  // x-swap: det = -1, so p'11 = -p12, p'12 = -p11, p' = -p
  CoordinateChange swap_x(c, {var(c, "x2"), var(c, "x1")}, {var(c, "q1")},
                          {var(c, "x2"), var(c, "x1")}, {var(c, "q1")});
  std::vector<Rational> out = transform_momenta(swap_x, pt, true);
  CHECK(out[c.x_index(1)] == rat(2));
  CHECK(out[c.x_index(2)] == rat(1));
  CHECK(out[c.p_index(1, 1)] == rat(-7));
  CHECK(out[c.p_index(1, 2)] == rat(-5));
  CHECK(out[c.energy_index()] == rat(-11));

  // q' = q + x1 at n = 1: p'11 = p11, p' = p - p11
  Chart c1 = Chart::extended(1, 1);
  auto v1 = [&](const char* s) { return Scalar::variable(c1.vars(), s); };
  CoordinateChange shift(c1, {v1("x1")}, {v1("q1") + v1("x1")}, {v1("x1")},
                         {v1("q1") - v1("x1")});
  std::vector<Rational> pt1 = {rat(2), rat(3), rat(5), rat(7)};
  std::vector<Rational> out1 = transform_momenta(shift, pt1, true);
  CHECK(out1[c1.p_index(1, 1)] == rat(5));
  CHECK(out1[c1.energy_index()] == rat(2));

  // composing with the inverse restores the point
  std::vector<Rational> back = transform_momenta(shift.inverse(), out1, true);
  CHECK(back == pt1);
}

TEST_CASE("pullbacks") {
  Chart c = Chart::extended(2, 1);
  auto v = [&](const char* s) { return Scalar::variable(c.vars(), s); };
  CoordinateChange shear(c, {v("x1") + v("x2"), v("x2")}, {v("q1")},
                         {v("x1") - v("x2"), v("x2")}, {v("q1")});
  CHECK(pullback_form(shear, d_of(c, {0})) == d_of(c, {0}) + d_of(c, {1}));

  // naturality of the multicanonical form
  CHECK(pullback_form(shear, theta(c)) == theta(c));
  CHECK(pullback_form(shear, omega(c)) == omega(c));

  CoordinateChange id = CoordinateChange::identity(c);
  RandomSource rs(99);
  Form a = rs.form(c, 2);
  CHECK(pullback_form(id, a) == a);
}

TEST_CASE("invalid changes are rejected") {
  Chart c = Chart::extended(2, 1);
  auto v = [&](const char* s) { return Scalar::variable(c.vars(), s); };
  // wrong inverse
  CHECK_THROWS(CoordinateChange(c, {v("x1") + v("x2"), v("x2")}, {v("q1")},
                                {v("x1"), v("x2")}, {v("q1")}));
  // x' depending on q is not a bundle morphism over M
  CHECK_THROWS(CoordinateChange(c, {v("x1") + v("q1"), v("x2")}, {v("q1")},
                                {v("x1") - v("q1"), v("x2")}, {v("q1")}));
}
