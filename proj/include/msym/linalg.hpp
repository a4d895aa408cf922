#pragma once

#include <optional>
#include <vector>

#include "msym/rational.hpp"
#include "msym/scalar.hpp"

namespace msym {

using RationalMatrix = std::vector<std::vector<Rational>>;

int matrix_rank(RationalMatrix m);

/// Basis of the right nullspace of m, one vector per free column,
/// in column order (deterministic).
std::vector<std::vector<Rational>> nullspace(RationalMatrix m);

/// Exact inverse of a square matrix, or nullopt when singular.
std::optional<RationalMatrix> matrix_inverse(const RationalMatrix& m);

/// Determinant by fraction-free-ish Gaussian elimination (exact rationals).
Rational determinant(RationalMatrix m);

/// Solves m x = b exactly with polynomial right-hand sides, running the same
/// row reduction on all components of b. Free variables are set to zero
/// (pivoted particular solution). Returns nullopt if inconsistent.
std::optional<std::vector<Scalar>> solve_linear(RationalMatrix m,
                                                std::vector<Scalar> b);

}  // namespace msym
