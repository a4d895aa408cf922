#pragma once

#include <map>
#include <string>
#include <vector>

#include "msym/scalar.hpp"

namespace msym {

/// Connection data seeding every induced connection: a connection in the
/// configuration bundle E, given by coefficients Gamma^i_mu(x, q), and a
/// torsion-free linear connection in TM with Christoffel symbols
/// Gamma^kappa_{mu lambda}(x). Entries live over the base variable list
/// (x^1..x^n, q^1..q^N).
class ConnectionData {
 public:
  /// gamma_e[i-1][mu-1] = Gamma^i_mu; gamma_tm[kappa-1][mu-1][lambda-1] =
  /// Gamma^kappa_{mu lambda}.
  ConnectionData(int n, int N, std::vector<std::vector<Scalar>> gamma_e,
                 std::vector<std::vector<std::vector<Scalar>>> gamma_tm);

  static Vars base_vars(int n, int N);
  static ConnectionData zero(int n, int N);

  int n() const { return n_; }
  int N() const { return N_; }
  const Vars& vars() const { return vars_; }
  const Scalar& gamma_E(int i, int mu) const;
  const Scalar& gamma_TM(int kappa, int mu, int lambda) const;

 private:
  int n_, N_;
  Vars vars_;
  std::vector<std::vector<Scalar>> gamma_e_;
  std::vector<std::vector<std::vector<Scalar>>> gamma_tm_;
};

enum class Bundle {
  VE,
  VstarE,
  piTM,
  piTstarM,
  piVolM,
  JvecE,
  JE,
  OrdinaryMultiphase,
  ExtendedMultiphase,
};

const char* bundle_name(Bundle b);

/// Induced connection on a derived bundle, as the jet-section coefficients in
/// induced adapted coordinates. The full variable list is the base block
/// (x, q) followed by the bundle's fiber coordinates; coefficients[name][mu-1]
/// is the jet component of the named fiber coordinate in the x^mu direction,
/// and q_block[i-1][mu-1] repeats the common Gamma^i_mu block.
struct InducedConnection {
  Bundle bundle;
  Vars vars;
  std::vector<std::string> fiber;
  std::map<std::string, std::vector<Scalar>> coefficients;
  std::vector<std::vector<Scalar>> q_block;
};

InducedConnection induce(const ConnectionData& conn, Bundle bundle);

/// Cross-bullet consistency: VE/V*E and piTM/piT*M coefficients are
/// negative-transpose pairs in the fiber index, the volume bundle coefficient
/// is minus the trace of the piTM block, and the extended multiphase
/// coefficients restrict to the ordinary ones.
bool duality_check(const ConnectionData& conn);

}  // namespace msym
