#pragma once

#include <cstdint>
#include <random>

#include "msym/connections.hpp"
#include "msym/hamiltonian.hpp"

namespace msym {

/// Seeded generator for the randomized identity suites. "Random" follows the
/// house convention: polynomial coefficients of bounded total degree with
/// rational coefficients of magnitude at most 5.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed, int max_degree = 2)
      : rng_(seed), max_degree_(max_degree) {}

  Rational rational();
  int uniform(int lo, int hi);

  Scalar scalar(const Vars& vars);
  /// Polynomial in a restricted set of variables.
  Scalar scalar_in(const Vars& vars, const std::vector<int>& allowed);
  /// Polynomial in the (x, q) block of a chart.
  Scalar scalar_xq(const Chart& chart);

  Form form(const Chart& chart, int degree);
  Multivector multivector(const Chart& chart, int degree);

  /// Provably locally Hamiltonian: constant multivector plus kernel elements
  /// with polynomial coefficients, plus canonical lifts (degree 1) and
  /// explicit function fields (degree n).
  Multivector locally_hamiltonian(const Chart& chart, int degree);

  /// Exact Hamiltonian field of degree 1 or 2 (lifts, @x's, filtered wedges).
  Multivector exact_hamiltonian(const Chart& chart, int degree);

  /// Horizontal form with (x, q)-dependent coefficients; always Poisson.
  Form horizontal_poisson(const Chart& chart, int degree);

  /// Poisson form with its Hamiltonian pair, drawn from functions, momentum
  /// map images and horizontal forms.
  HamiltonianPair poisson_pair(const Chart& chart);

  ConnectionData connection(int n, int N);

 private:
  std::mt19937_64 rng_;
  int max_degree_;
};

}  // namespace msym
