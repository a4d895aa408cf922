#pragma once

#include "msym/exterior.hpp"

namespace msym {

/// d(f dz^I) = sum_v (df/dz^v) dz^v ^ dz^I; d o d = 0.
Form exterior_derivative(const Form& alpha);

/// Lie derivative along a degree-r multivector field:
///   L_X alpha = d i_X alpha - (-1)^r i_X d alpha.
Form lie_derivative(const Form& alpha, const Multivector& X);

/// Schouten bracket of multivector fields of degrees r, s >= 1; result has
/// degree r + s - 1 and extends the Lie bracket of vector fields. Computed by
/// bilinear reduction of each basis-term pair to the decomposable expansion,
/// with single-vector brackets [f @a, g @b] = f (da g) @b - g (db f) @a.
Multivector schouten_bracket(const Multivector& X, const Multivector& Y);

}  // namespace msym
