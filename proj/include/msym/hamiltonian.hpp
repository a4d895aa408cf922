#pragma once

#include <map>
#include <utility>
#include <vector>

#include "msym/calculus.hpp"
#include "msym/exterior.hpp"
#include "msym/multiphase.hpp"

namespace msym {

/// All strictly increasing index tuples of the given length over 0..dim-1,
/// in lexicographic order.
std::vector<IndexTuple> basis_tuples(int dim, int length);

/// A form f of degree n - r together with a multivector X of degree r
/// witnessing i_X omega = df.
struct HamiltonianPair {
  Form f;
  Multivector X;
  int r() const { return X.degree(); }
};

/// Constant-coefficient basis of the degree-r kernel of contraction with
/// omega. Because omega has constant coefficients, the pointwise kernel is
/// the same at every point, and coefficient-linearity of contraction makes
/// this finite basis decide the universally quantified kernel conditions.
struct KernelBasis {
  int degree;
  std::vector<Multivector> elements;
};

KernelBasis kernel_basis(const Chart& chart, int r);

/// d(i_X omega) = 0
bool is_locally_hamiltonian(const Multivector& X);

/// L_X theta = 0
bool is_exact_hamiltonian(const Multivector& X);

/// Solves i_X omega = df for X of degree n - degree(f) via the constant
/// contraction matrix, coefficient-wise over the polynomial ring. Returns the
/// pivoted particular solution (free components zero, no kernel part).
/// Throws not_hamiltonian_error when the system is inconsistent.
HamiltonianPair solve_hamiltonian_field(const Form& f);

enum class PoissonClass { poisson, weak_poisson, hamiltonian_only, not_hamiltonian };

/// Classification of a Hamiltonian form by its contractions with the kernel
/// of omega: poisson if i_xi f = 0 for every constant kernel element xi,
/// weak_poisson if those contractions are merely closed.
PoissonClass is_poisson_form(const Form& f);

/// The Poisson bracket of two (weak) Poisson forms with chosen Hamiltonian
/// fields:
///   {f,g} = (-1)^{r(s-1)} i_Y i_X omega
///         + d( (-1)^{(r-1)(s-1)} i_Y f - i_X g - (-1)^{(r-1)s} i_Y i_X theta ).
/// Degree underflow yields the zero form. Inputs must classify as poisson or
/// weak_poisson.
Form poisson_bracket(const HamiltonianPair& a, const HamiltonianPair& b);

/// Bracket without the exact correction term: (-1)^{r(s-1)} i_Y i_X omega.
/// Kept separate as the negative control for the Jacobi identity.
Form poisson_bracket_uncorrected(const HamiltonianPair& a,
                                 const HamiltonianPair& b);

/// Universal multimomentum map J(X) = (-1)^{r-1} i_X theta, paired with X.
/// Requires X exact Hamiltonian.
HamiltonianPair momentum_map(const Multivector& X);

/// Explicit Hamiltonian n-multivector field of a function (0-form), built
/// from the epsilon-contracted partial derivatives of f. Satisfies
/// i_X omega = df exactly and agrees with solve_hamiltonian_field modulo the
/// degree-n kernel.
Multivector hamiltonian_field_for_function(const Chart& chart, const Scalar& f);

/// De Donder-Weyl vector fields X_1..X_n for h = -H - p; their wedge X
/// satisfies i_X omega = dh exactly. H must not depend on the energy
/// coordinate.
std::vector<Multivector> de_donder_weyl_field(const Chart& chart,
                                              const Scalar& H);

/// Canonical lift of a vertical vector field v^i(x,q) d/dq^i to extended
/// multiphase space; always exact Hamiltonian.
Multivector canonical_lift(const Chart& chart, const std::vector<Scalar>& v);

/// Coefficient blocks of the general degree-r multivector expansion (kernel
/// part excluded). Space-time index tuples are 1-based and the blocks must be
/// totally antisymmetric in them.
struct AnsatzCoefficients {
  std::map<std::vector<int>, Scalar> x_block;                  // X^{mu1..mur}
  std::map<std::pair<int, std::vector<int>>, Scalar> q_block;  // X^{i,mu2..mur}
  std::map<std::pair<int, std::vector<int>>, Scalar> p_block;  // X_i^{mu1..mur}
  std::map<std::vector<int>, Scalar> e_block;                  // X_0^{mu2..mur}
};

/// Assembles the expansion with its 1/r! and 1/(r-1)! normalizations:
///   (1/r!)     X^{mu1..mur}    @x^mu1 ^ .. ^ @x^mur
/// + (1/(r-1)!) X^{i,mu2..mur}  @q^i ^ @x^mu2 ^ .. ^ @x^mur
/// + (1/r!)     X_i^{mu1..mur}  @p_i^mu1 ^ @x^mu2 ^ .. ^ @x^mur
/// + (1/(r-1)!) X_0^{mu2..mur}  @p ^ @x^mu2 ^ .. ^ @x^mur
Multivector ansatz_multivector(const Chart& chart, const AnsatzCoefficients& c,
                               int r);

}  // namespace msym
