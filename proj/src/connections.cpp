#include "msym/connections.hpp"

namespace msym {

namespace {

std::string num(int k) { return std::to_string(k); }

Scalar lift(const Scalar& s, const Vars& target) { return rename_vars(s, target); }

}  // namespace

Vars ConnectionData::base_vars(int n, int N) {
  std::vector<std::string> names;
  for (int mu = 1; mu <= n; ++mu) names.push_back("x" + num(mu));
  for (int i = 1; i <= N; ++i) names.push_back("q" + num(i));
  return Vars(std::move(names));
}

ConnectionData::ConnectionData(
    int n, int N, std::vector<std::vector<Scalar>> gamma_e,
    std::vector<std::vector<std::vector<Scalar>>> gamma_tm)
    : n_(n), N_(N), vars_(base_vars(n, N)),
      gamma_e_(std::move(gamma_e)), gamma_tm_(std::move(gamma_tm)) {
  if (n < 1 || N < 1) throw usage_error("connection dimensions must be positive");
  if (gamma_e_.size() != static_cast<std::size_t>(N))
    throw usage_error("gamma_E must have one row per fiber index");
  for (const auto& row : gamma_e_) {
    if (row.size() != static_cast<std::size_t>(n))
      throw usage_error("gamma_E row length must equal n");
    for (const Scalar& s : row)
      if (s.vars() != vars_)
        throw usage_error("gamma_E entries must live over the base variables");
  }
  if (gamma_tm_.size() != static_cast<std::size_t>(n))
    throw usage_error("gamma_TM must be n x n x n");
  for (const auto& plane : gamma_tm_) {
    if (plane.size() != static_cast<std::size_t>(n))
      throw usage_error("gamma_TM must be n x n x n");
    for (const auto& row : plane) {
      if (row.size() != static_cast<std::size_t>(n))
        throw usage_error("gamma_TM must be n x n x n");
      for (const Scalar& s : row) {
        if (s.vars() != vars_)
          throw usage_error("gamma_TM entries must live over the base variables");
        for (int q = 0; q < N; ++q)
          if (s.depends_on(n + q))
            throw usage_error("gamma_TM entries may depend on x only");
      }
    }
  }
  for (int kappa = 0; kappa < n; ++kappa)
    for (int mu = 0; mu < n; ++mu)
      for (int lambda = 0; lambda < n; ++lambda)
        if (gamma_tm_[kappa][mu][lambda] != gamma_tm_[kappa][lambda][mu])
          throw usage_error("gamma_TM must be symmetric in its lower indices (torsion free)");
}

ConnectionData ConnectionData::zero(int n, int N) {
  Vars vars = base_vars(n, N);
  Scalar z = Scalar::zero(vars);
  return ConnectionData(
      n, N, std::vector<std::vector<Scalar>>(N, std::vector<Scalar>(n, z)),
      std::vector<std::vector<std::vector<Scalar>>>(
          n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, z))));
}

const Scalar& ConnectionData::gamma_E(int i, int mu) const {
  if (i < 1 || i > N_ || mu < 1 || mu > n_)
    throw usage_error("gamma_E index out of range");
  return gamma_e_[i - 1][mu - 1];
}

const Scalar& ConnectionData::gamma_TM(int kappa, int mu, int lambda) const {
  if (kappa < 1 || kappa > n_ || mu < 1 || mu > n_ || lambda < 1 || lambda > n_)
    throw usage_error("gamma_TM index out of range");
  return gamma_tm_[kappa - 1][mu - 1][lambda - 1];
}

const char* bundle_name(Bundle b) {
  switch (b) {
    case Bundle::VE: return "VE";
    case Bundle::VstarE: return "VstarE";
    case Bundle::piTM: return "piTM";
    case Bundle::piTstarM: return "piTstarM";
    case Bundle::piVolM: return "piVolM";
    case Bundle::JvecE: return "JvecE";
    case Bundle::JE: return "JE";
    case Bundle::OrdinaryMultiphase: return "OrdinaryMultiphase";
    case Bundle::ExtendedMultiphase: return "ExtendedMultiphase";
  }
  throw usage_error("unknown bundle");
}

InducedConnection induce(const ConnectionData& conn, Bundle bundle) {
  int n = conn.n(), N = conn.N();
  InducedConnection out;
  out.bundle = bundle;
  switch (bundle) {
    case Bundle::VE:
      for (int k = 1; k <= N; ++k) out.fiber.push_back("v" + num(k));
      break;
    case Bundle::VstarE:
      for (int k = 1; k <= N; ++k) out.fiber.push_back("pv" + num(k));
      break;
    case Bundle::piTM:
      for (int k = 1; k <= n; ++k) out.fiber.push_back("u" + num(k));
      break;
    case Bundle::piTstarM:
      for (int k = 1; k <= n; ++k) out.fiber.push_back("a" + num(k));
      break;
    case Bundle::piVolM:
      out.fiber.push_back("eps");
      break;
    case Bundle::JvecE:
    case Bundle::JE:
      for (int k = 1; k <= N; ++k)
        for (int kappa = 1; kappa <= n; ++kappa)
          out.fiber.push_back("u" + num(k) + "_" + num(kappa));
      break;
    case Bundle::OrdinaryMultiphase:
    case Bundle::ExtendedMultiphase:
      for (int k = 1; k <= N; ++k)
        for (int kappa = 1; kappa <= n; ++kappa)
          out.fiber.push_back("p" + num(k) + "_" + num(kappa));
      if (bundle == Bundle::ExtendedMultiphase) out.fiber.push_back("p");
      break;
  }
  std::vector<std::string> names;
  for (int mu = 1; mu <= n; ++mu) names.push_back("x" + num(mu));
  for (int i = 1; i <= N; ++i) names.push_back("q" + num(i));
  for (const std::string& f : out.fiber) names.push_back(f);
  out.vars = Vars(std::move(names));
  const Vars& vars = out.vars;

  auto gE = [&](int i, int mu) { return lift(conn.gamma_E(i, mu), vars); };
  auto gTM = [&](int k, int mu, int l) { return lift(conn.gamma_TM(k, mu, l), vars); };
  auto fiber_var = [&](const std::string& name) {
    return Scalar::variable(vars, name);
  };
  // dGamma^k_mu / dq^l and dGamma^j_mu / dx^nu, taken over the lifted list
  auto dq_gE = [&](int k, int mu, int l) {
    return gE(k, mu).partial(vars.index_of("q" + num(l)));
  };
  auto dx_gE = [&](int j, int nu, int mu) {
    return gE(j, nu).partial(vars.index_of("x" + num(mu)));
  };

  for (int i = 1; i <= N; ++i) {
    std::vector<Scalar> row;
    for (int mu = 1; mu <= n; ++mu) row.push_back(gE(i, mu));
    out.q_block.push_back(std::move(row));
  }

  auto coeff_rows = [&](const std::string& name) -> std::vector<Scalar>& {
    return out.coefficients.emplace(name, std::vector<Scalar>(n, Scalar::zero(vars)))
        .first->second;
  };

  switch (bundle) {
    case Bundle::VE:
      for (int k = 1; k <= N; ++k) {
        auto& rows = coeff_rows("v" + num(k));
        for (int mu = 1; mu <= n; ++mu)
          for (int l = 1; l <= N; ++l)
            rows[mu - 1] += dq_gE(k, mu, l) * fiber_var("v" + num(l));
      }
      break;
    case Bundle::VstarE:
      for (int k = 1; k <= N; ++k) {
        auto& rows = coeff_rows("pv" + num(k));
        for (int mu = 1; mu <= n; ++mu)
          for (int l = 1; l <= N; ++l)
            rows[mu - 1] -= dq_gE(l, mu, k) * fiber_var("pv" + num(l));
      }
      break;
    case Bundle::piTM:
      for (int kappa = 1; kappa <= n; ++kappa) {
        auto& rows = coeff_rows("u" + num(kappa));
        for (int mu = 1; mu <= n; ++mu)
          for (int lambda = 1; lambda <= n; ++lambda)
            rows[mu - 1] += gTM(kappa, mu, lambda) * fiber_var("u" + num(lambda));
      }
      break;
    case Bundle::piTstarM:
      for (int kappa = 1; kappa <= n; ++kappa) {
        auto& rows = coeff_rows("a" + num(kappa));
        for (int mu = 1; mu <= n; ++mu)
          for (int lambda = 1; lambda <= n; ++lambda)
            rows[mu - 1] -= gTM(lambda, mu, kappa) * fiber_var("a" + num(lambda));
      }
      break;
    case Bundle::piVolM: {
      auto& rows = coeff_rows("eps");
      for (int mu = 1; mu <= n; ++mu)
        for (int rho = 1; rho <= n; ++rho)
          rows[mu - 1] -= gTM(rho, mu, rho) * fiber_var("eps");
      break;
    }
    case Bundle::JvecE:
      for (int k = 1; k <= N; ++k) {
        for (int kappa = 1; kappa <= n; ++kappa) {
          auto& rows = coeff_rows("u" + num(k) + "_" + num(kappa));
          for (int mu = 1; mu <= n; ++mu) {
            for (int l = 1; l <= N; ++l)
              rows[mu - 1] +=
                  dq_gE(k, mu, l) * fiber_var("u" + num(l) + "_" + num(kappa));
            for (int lambda = 1; lambda <= n; ++lambda)
              rows[mu - 1] -=
                  gTM(lambda, mu, kappa) * fiber_var("u" + num(k) + "_" + num(lambda));
          }
        }
      }
      break;
    case Bundle::JE:
      for (int k = 1; k <= N; ++k) {
        for (int kappa = 1; kappa <= n; ++kappa) {
          auto& rows = coeff_rows("u" + num(k) + "_" + num(kappa));
          for (int mu = 1; mu <= n; ++mu) {
            for (int l = 1; l <= N; ++l)
              rows[mu - 1] +=
                  dq_gE(k, mu, l) *
                  (fiber_var("u" + num(l) + "_" + num(kappa)) - gE(l, kappa));
            for (int lambda = 1; lambda <= n; ++lambda)
              rows[mu - 1] -=
                  gTM(lambda, mu, kappa) *
                  (fiber_var("u" + num(k) + "_" + num(lambda)) - gE(k, lambda));
          }
        }
      }
      break;
    case Bundle::OrdinaryMultiphase:
    case Bundle::ExtendedMultiphase:
      for (int k = 1; k <= N; ++k) {
        for (int kappa = 1; kappa <= n; ++kappa) {
          auto& rows = coeff_rows("p" + num(k) + "_" + num(kappa));
          for (int mu = 1; mu <= n; ++mu) {
            for (int l = 1; l <= N; ++l)
              rows[mu - 1] -=
                  dq_gE(l, mu, k) * fiber_var("p" + num(l) + "_" + num(kappa));
            for (int lambda = 1; lambda <= n; ++lambda)
              rows[mu - 1] +=
                  gTM(kappa, mu, lambda) * fiber_var("p" + num(k) + "_" + num(lambda));
            for (int rho = 1; rho <= n; ++rho)
              rows[mu - 1] -=
                  gTM(rho, mu, rho) * fiber_var("p" + num(k) + "_" + num(kappa));
          }
        }
      }
      if (bundle == Bundle::ExtendedMultiphase) {
        auto& rows = coeff_rows("p");
        for (int mu = 1; mu <= n; ++mu) {
          for (int rho = 1; rho <= n; ++rho)
            rows[mu - 1] -= gTM(rho, mu, rho) * fiber_var("p");
          for (int j = 1; j <= N; ++j) {
            for (int nu = 1; nu <= n; ++nu) {
              Scalar paren = dx_gE(j, nu, mu);
              for (int k = 1; k <= N; ++k)
                paren -= gE(k, nu) * dq_gE(j, mu, k);
              for (int kappa = 1; kappa <= n; ++kappa)
                paren -= gTM(kappa, mu, nu) * gE(j, kappa);
              rows[mu - 1] -= paren * fiber_var("p" + num(j) + "_" + num(nu));
            }
          }
        }
      }
      break;
  }
  return out;
}

bool duality_check(const ConnectionData& conn) {
  int n = conn.n(), N = conn.N();
  InducedConnection ve = induce(conn, Bundle::VE);
  InducedConnection vse = induce(conn, Bundle::VstarE);
  InducedConnection ptm = induce(conn, Bundle::piTM);
  InducedConnection ptsm = induce(conn, Bundle::piTstarM);
  InducedConnection pvol = induce(conn, Bundle::piVolM);
  InducedConnection ord = induce(conn, Bundle::OrdinaryMultiphase);
  InducedConnection ext = induce(conn, Bundle::ExtendedMultiphase);

  auto linear_coeff = [](const InducedConnection& ic, const std::string& row,
                         int mu, const std::string& col) {
    return ic.coefficients.at(row)[mu - 1].partial(ic.vars.index_of(col));
  };
  // (a) VE and V*E are negative transposes in the fiber index
  for (int k = 1; k <= N; ++k)
    for (int l = 1; l <= N; ++l)
      for (int mu = 1; mu <= n; ++mu) {
        Scalar a = linear_coeff(ve, "v" + std::to_string(k), mu,
                                "v" + std::to_string(l));
        Scalar b = linear_coeff(vse, "pv" + std::to_string(l), mu,
                                "pv" + std::to_string(k));
        if (lift(a, conn.vars()) != -lift(b, conn.vars())) return false;
      }
  // (b) piTM and piT*M likewise
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l)
      for (int mu = 1; mu <= n; ++mu) {
        Scalar a = linear_coeff(ptm, "u" + std::to_string(k), mu,
                                "u" + std::to_string(l));
        Scalar b = linear_coeff(ptsm, "a" + std::to_string(l), mu,
                                "a" + std::to_string(k));
        if (lift(a, conn.vars()) != -lift(b, conn.vars())) return false;
      }
  // (c) volume coefficient is minus the trace of the piTM block
  for (int mu = 1; mu <= n; ++mu) {
    Scalar tr = Scalar::zero(conn.vars());
    for (int rho = 1; rho <= n; ++rho)
      tr += lift(linear_coeff(ptm, "u" + std::to_string(rho), mu,
                              "u" + std::to_string(rho)),
                 conn.vars());
    Scalar vol = lift(linear_coeff(pvol, "eps", mu, "eps"), conn.vars());
    if (vol != -tr) return false;
  }
  // (d) extended multiphase restricts to ordinary multiphase on (q, p) parts
  for (const std::string& name : ord.fiber)
    for (int mu = 1; mu <= n; ++mu)
      if (lift(ord.coefficients.at(name)[mu - 1], ext.vars) !=
          ext.coefficients.at(name)[mu - 1])
        return false;
  return true;
}

}  // namespace msym
