#pragma once

#include <vector>

#include "microlap/rational.hpp"

namespace microlap::exact {

// Derivatives 0..order of Gamma(1-{y})/Gamma(-y) at y = alpha, evaluated at
// the right of alpha when alpha is an integer.  With n = floor(alpha) the
// function equals the rational function
//     R_n(y) = (-y)_(n+1)              for n >= 0,
//     R_n(y) = 1 / (-y+n+1)_(-n-1)     for n <= -1,
// and the jet is computed by exact polynomial / power-series manipulation.
// Denominator factors in the reciprocal case are provably nonzero.
std::vector<Rational> pochhammer_ratio_jet(const Rational& alpha, long order);

// Same jet as Taylor coefficients instead of derivatives.
std::vector<Rational> pochhammer_ratio_taylor(const Rational& alpha, long order);

}  // namespace microlap::exact
