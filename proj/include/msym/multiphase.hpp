#pragma once

#include <vector>

#include "msym/calculus.hpp"
#include "msym/exterior.hpp"

namespace msym {

/// Horizontal volume form d^n x = dx^1 ^ ... ^ dx^n.
Form volume_form(const Chart& chart);

/// d^n x_mu = i_{@x^mu} d^n x (mu is the 1-based space-time label).
Form volume_form_mu(const Chart& chart, int mu);

/// Multicanonical n-form  theta = p_i^mu dq^i ^ d^n x_mu + p d^n x.
Form theta(const Chart& chart);

/// Multisymplectic (n+1)-form  omega = dq^i ^ dp_i^mu ^ d^n x_mu - dp ^ d^n x;
/// equals -d(theta) exactly.
Form omega(const Chart& chart);

/// Scaling (Euler) vector field: p_i^mu @p_i^mu (+ p @p on the extended chart).
Multivector sigma(const Chart& chart);

/// theta with the momentum coordinates frozen at the given point: the
/// constant-coefficient n-form representing the point of extended multiphase
/// space as an (n-1)-horizontal n-form on E.
Form phi_form(const std::vector<Rational>& point, const Chart& chart);

/// Dual pairing between a multiphase-space point and jet coordinates
/// u = (q_mu^i), ordered like the momentum block (i-major). Extended charts
/// give the affine pairing p_i^mu q_mu^i + p; ordinary charts omit the + p.
/// Twisted results are tagged as multiples of d^n x.
struct PairingResult {
  Rational value;
  bool twisted;
};
PairingResult dual_pairing(const Chart& chart, const std::vector<Rational>& z,
                           const std::vector<Rational>& u, bool twisted);

/// Affine fibered coordinate change: x' = x'(x) and q' = q'(x, q), both
/// affine, with explicitly supplied inverses (validated at construction).
/// Affinity keeps all Jacobians constant and the momentum transformation
/// polynomial.
class CoordinateChange {
 public:
  CoordinateChange(Chart chart, std::vector<Scalar> x_map,
                   std::vector<Scalar> q_map, std::vector<Scalar> x_inverse,
                   std::vector<Scalar> q_inverse);

  static CoordinateChange identity(const Chart& chart);

  const Chart& chart() const { return chart_; }
  const std::vector<Scalar>& x_map() const { return x_map_; }
  const std::vector<Scalar>& q_map() const { return q_map_; }
  const std::vector<Scalar>& x_inverse() const { return x_inverse_; }
  const std::vector<Scalar>& q_inverse() const { return q_inverse_; }

  /// Every primed coordinate as a polynomial in the unprimed ones, including
  /// the induced momentum (and energy) components.
  std::vector<Scalar> coordinate_images(bool twisted) const;

  CoordinateChange inverse() const;

 private:
  Chart chart_;
  std::vector<Scalar> x_map_, q_map_, x_inverse_, q_inverse_;
};

/// Transformed momentum/energy values of a point under the induced change.
std::vector<Rational> transform_momenta(const CoordinateChange& change,
                                        const std::vector<Rational>& point,
                                        bool twisted);

/// Pullback of a form written in primed coordinates to the unprimed chart:
/// substitute the coordinate images and their differentials.
Form pullback_form(const CoordinateChange& change, const Form& alpha);

}  // namespace msym
