#pragma once

#include <complex>
#include <map>
#include <vector>

#include "microlap/logseries.hpp"

namespace microlap::gammanum {

using Complex = std::complex<double>;
using exact::ExpLogSeries;
using exact::LogSeries;
using exact::Rational;
using exact::TermKey;

// Truncated expansion with complex double coefficients; shape mirrors the
// exact LogSeries it came from.  `rho` carries the exponential prefactor
// e^(rho x) when the series lives at infinity.
struct NumericLogSeries {
  bool at_infinity = false;
  Rational rho{0};
  long trunc = 0;
  std::map<TermKey, std::vector<Complex>> terms;
  double coeff_err = 0.0;  // uniform absolute error estimate per coefficient

  // Convergent evaluation (finite base): direct summation with the principal
  // log branch; meaningful when the series converges at x.
  Complex eval_at_zero_side(Complex x) const;
  NumericLogSeries deriv() const;  // same rules as the exact counterpart
};

// Derivatives 0..order of 1/Gamma at s in (0,1]; absolute error <= 1e-12 for
// order <= 8.  Throws OrderTooLarge beyond order 12.
std::vector<Complex> recip_gamma_jet(const Rational& s, int order);

// Internal unchecked variant, any non-pole real point.
std::vector<Complex> recip_gamma_jet_at(double s, int order);

// Gamma jets at -alpha via series inversion of the 1/Gamma jet.
std::vector<Complex> gamma_jet_at(double s, int order);

// Polygamma psi^(k)(x), x > 0, recurrence + Bernoulli asymptotics.
double polygamma(int k, double x);

// T at infinity:
//   x^(-a-1) log(1/x)^v  |->  x^(-a-1) sum_i (-1)^(v-i) C(v,i) G^(v-i)(1-{a}) log(1/x)^i
// with G = 1/Gamma.  Input rows keep their exponent keys.
NumericLogSeries apply_T_infinity(const ExpLogSeries& f);

// T at zero (log x = -log(1/x) convention):
//   x^(n+a) log(x)^j |-> x^(n+a) sum_i C(j,i) G^(j-i)(1-{-a-1}) log(x)^i.
NumericLogSeries apply_T_zero(const LogSeries& f);

// Remark-2 forward Laplace of one monomial:
//   x^(-alpha-1) log(1/x)^i |-> sum_k C(i,k)(-1)^(i-k) Gamma^(i-k)(-alpha) z^alpha log^k z.
// Throws PoleAtNonpositiveInteger when -alpha in Z<=0.
NumericLogSeries forward_laplace_monomial(const Rational& alpha, int i);

inline double euler_gamma() { return 0.57721566490153286060651209008240243; }

}  // namespace microlap::gammanum
