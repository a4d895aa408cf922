#include <doctest.h>

#include "msym/connections.hpp"
#include "msym/random_objects.hpp"

using namespace msym;

namespace {
Scalar fv(const InducedConnection& ic, const std::string& name) {
  return Scalar::variable(ic.vars, name);
}
Scalar bv(const InducedConnection& ic, const std::string& name) {
  return Scalar::variable(ic.vars, name);
}

const std::vector<Bundle> kAllBundles = {
    Bundle::VE,     Bundle::VstarE, Bundle::piTM,
    Bundle::piTstarM, Bundle::piVolM, Bundle::JvecE,
    Bundle::JE,     Bundle::OrdinaryMultiphase, Bundle::ExtendedMultiphase};
}  // namespace

TEST_CASE("zero connection data induces zero coefficients everywhere") {
  ConnectionData zero = ConnectionData::zero(2, 2);
  for (Bundle b : kAllBundles) {
    InducedConnection ic = induce(zero, b);
    for (const auto& [name, rows] : ic.coefficients)
      for (const Scalar& s : rows) CHECK(s.is_zero());
    for (const auto& row : ic.q_block)
      for (const Scalar& s : row) CHECK(s.is_zero());
  }
}

TEST_CASE("induced coefficients, hand-substituted at n = N = 1") {
  // Gamma^1_1 = x1*q1, Gamma^1_{11} = 2*x1
  Vars base = ConnectionData::base_vars(1, 1);
  Scalar x = Scalar::variable(base, "x1"), q = Scalar::variable(base, "q1");
  ConnectionData conn(1, 1, {{x * q}}, {{{rat(2) * x}}});

  auto coeff = [&](Bundle b, const std::string& fiber) {
    InducedConnection ic = induce(conn, b);
    return std::pair{ic, ic.coefficients.at(fiber)[0]};
  };

  {
    auto [ic, c] = coeff(Bundle::VE, "v1");
    CHECK(c == bv(ic, "x1") * fv(ic, "v1"));
  }
  {
    auto [ic, c] = coeff(Bundle::VstarE, "pv1");
    CHECK(c == -(bv(ic, "x1") * fv(ic, "pv1")));
  }
  {
    auto [ic, c] = coeff(Bundle::piTM, "u1");
    CHECK(c == rat(2) * (bv(ic, "x1") * fv(ic, "u1")));
  }
  {
    auto [ic, c] = coeff(Bundle::piTstarM, "a1");
    CHECK(c == rat(-2) * (bv(ic, "x1") * fv(ic, "a1")));
  }
  {
    auto [ic, c] = coeff(Bundle::piVolM, "eps");
    CHECK(c == rat(-2) * (bv(ic, "x1") * fv(ic, "eps")));
  }
  {
    auto [ic, c] = coeff(Bundle::JvecE, "u1_1");
    CHECK(c == -(bv(ic, "x1") * fv(ic, "u1_1")));
  }
  {
    auto [ic, c] = coeff(Bundle::JE, "u1_1");
    Scalar xq = bv(ic, "x1") * bv(ic, "q1");
    CHECK(c == -(bv(ic, "x1") * (fv(ic, "u1_1") - xq)));
  }
  {
    auto [ic, c] = coeff(Bundle::OrdinaryMultiphase, "p1_1");
    CHECK(c == -(bv(ic, "x1") * fv(ic, "p1_1")));
  }
  {
    InducedConnection ic = induce(conn, Bundle::ExtendedMultiphase);
    CHECK(ic.coefficients.at("p1_1")[0] == -(bv(ic, "x1") * fv(ic, "p1_1")));
    Scalar x_ = bv(ic, "x1"), q_ = bv(ic, "q1");
    Scalar expect_p = rat(-2) * (x_ * fv(ic, "p")) -
                      (q_ - rat(3) * (x_ * x_ * q_)) * fv(ic, "p1_1");
    CHECK(ic.coefficients.at("p")[0] == expect_p);
    // the common Gamma block rides along
    CHECK(ic.q_block[0][0] == rename_vars(x * q, ic.vars));
  }
}

TEST_CASE("induced coefficients, hand-substituted at n = 2, N = 1") {
  // Gamma^1_1 = q1, Gamma^1_2 = x2; Gamma^1_{12} = Gamma^1_{21} = 1
  Vars base = ConnectionData::base_vars(2, 1);
  Scalar q = Scalar::variable(base, "q1"), x2 = Scalar::variable(base, "x2");
  Scalar z = Scalar::zero(base), one = Scalar::constant(base, rat(1));
  ConnectionData conn(2, 1, {{q, x2}},
                      {{{z, one}, {one, z}},      // Gamma^1_{mu lambda}
                       {{z, z}, {z, z}}});        // Gamma^2_{mu lambda}

  {
    InducedConnection ic = induce(conn, Bundle::VE);
    CHECK(ic.coefficients.at("v1")[0] == fv(ic, "v1"));
    CHECK(ic.coefficients.at("v1")[1].is_zero());
  }
  {
    InducedConnection ic = induce(conn, Bundle::piTM);
    CHECK(ic.coefficients.at("u1")[0] == fv(ic, "u2"));
    CHECK(ic.coefficients.at("u1")[1] == fv(ic, "u1"));
    CHECK(ic.coefficients.at("u2")[0].is_zero());
    CHECK(ic.coefficients.at("u2")[1].is_zero());
  }
  {
    InducedConnection ic = induce(conn, Bundle::piTstarM);
    CHECK(ic.coefficients.at("a1")[0].is_zero());
    CHECK(ic.coefficients.at("a1")[1] == -fv(ic, "a1"));
    CHECK(ic.coefficients.at("a2")[0] == -fv(ic, "a1"));
    CHECK(ic.coefficients.at("a2")[1].is_zero());
  }
  {
    InducedConnection ic = induce(conn, Bundle::piVolM);
    CHECK(ic.coefficients.at("eps")[0].is_zero());
    CHECK(ic.coefficients.at("eps")[1] == -fv(ic, "eps"));
  }
  {
    InducedConnection ic = induce(conn, Bundle::JvecE);
    CHECK(ic.coefficients.at("u1_1")[0] == fv(ic, "u1_1"));
    CHECK(ic.coefficients.at("u1_1")[1] == -fv(ic, "u1_1"));
    CHECK(ic.coefficients.at("u1_2")[0] == fv(ic, "u1_2") - fv(ic, "u1_1"));
    CHECK(ic.coefficients.at("u1_2")[1].is_zero());
  }
  {
    InducedConnection ic = induce(conn, Bundle::JE);
    Scalar a1 = fv(ic, "u1_1") - bv(ic, "q1");
    Scalar a2 = fv(ic, "u1_2") - bv(ic, "x2");
    CHECK(ic.coefficients.at("u1_1")[0] == a1);
    CHECK(ic.coefficients.at("u1_1")[1] == -a1);
    CHECK(ic.coefficients.at("u1_2")[0] == a2 - a1);
    CHECK(ic.coefficients.at("u1_2")[1].is_zero());
  }
  {
    InducedConnection ic = induce(conn, Bundle::OrdinaryMultiphase);
    CHECK(ic.coefficients.at("p1_1")[0] == -fv(ic, "p1_1") + fv(ic, "p1_2"));
    CHECK(ic.coefficients.at("p1_1")[1].is_zero());
    CHECK(ic.coefficients.at("p1_2")[0] == -fv(ic, "p1_2"));
    CHECK(ic.coefficients.at("p1_2")[1] == -fv(ic, "p1_2"));
  }
  {
    InducedConnection ic = induce(conn, Bundle::ExtendedMultiphase);
    CHECK(ic.coefficients.at("p1_1")[0] == -fv(ic, "p1_1") + fv(ic, "p1_2"));
    Scalar q_ = bv(ic, "q1"), x2_ = bv(ic, "x2");
    Scalar p_mu1 = q_ * fv(ic, "p1_1") + (x2_ + q_) * fv(ic, "p1_2");
    Scalar p_mu2 = -fv(ic, "p") + q_ * fv(ic, "p1_1") - fv(ic, "p1_2");
    CHECK(ic.coefficients.at("p")[0] == p_mu1);
    CHECK(ic.coefficients.at("p")[1] == p_mu2);
  }
}

TEST_CASE("duality relations across the induced bundles") {
  CHECK(duality_check(ConnectionData::zero(2, 1)));
  RandomSource rs(61);
  for (int t = 0; t < 10; ++t) {
    int n = rs.uniform(1, 2), N = rs.uniform(1, 2);
    CHECK(duality_check(rs.connection(n, N)));
  }
}

TEST_CASE("constructor enforces the connection invariants") {
  Vars base = ConnectionData::base_vars(2, 1);
  Scalar x1 = Scalar::variable(base, "x1"), q = Scalar::variable(base, "q1");
  Scalar z = Scalar::zero(base);

  // torsion: Gamma^1_{12} != Gamma^1_{21}
  CHECK_THROWS_AS(ConnectionData(2, 1, {{z, z}},
                                 {{{z, x1}, {z, z}}, {{z, z}, {z, z}}}),
                  usage_error);
  // Christoffel symbols must not depend on q
  CHECK_THROWS_AS(ConnectionData(2, 1, {{z, z}},
                                 {{{q, z}, {z, z}}, {{z, z}, {z, z}}}),
                  usage_error);
}
