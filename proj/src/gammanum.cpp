#include "microlap/gammanum.hpp"

#include <array>
#include <cmath>

#include "microlap/error.hpp"

namespace microlap::gammanum {

namespace {

// Lanczos g = 7, n = 9 (Godfrey coefficients); relative error ~ 1e-15 for
// Re(x) > 0.
double lanczos_gamma(double x) {
  static const std::array<double, 9> c = {
      0.99999999999980993,  676.5203681218851,   -1259.1392167224028,
      771.32342877765313,   -176.61502916214059, 12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    // reflection
    return M_PI / (std::sin(M_PI * x) * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double a = c[0];
  double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += c[static_cast<size_t>(i)] / (x + i);
  return std::sqrt(2.0 * M_PI) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

// Even Bernoulli numbers B_2..B_16.
constexpr std::array<double, 8> kBernoulli2n = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0};

}  // namespace

double polygamma(int k, double x) {
  if (x <= 0.0) throw std::invalid_argument("polygamma: x must be positive");
  // Shift x up until the asymptotic series is accurate.
  double acc = 0.0;
  double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k for the recurrence term
  while (x < 24.0) {
    acc -= sign * std::tgamma(static_cast<double>(k) + 1.0) * std::pow(x, -(k + 1));
    x += 1.0;
  }
  // psi^(k)(x) ~ (-1)^(k-1) [ (k-1)!/x^k + k!/(2 x^(k+1))
  //              + sum_n B_2n (2n+k-1)!/(2n)! x^(-2n-k) ]   (k >= 1)
  // psi(x) ~ ln x - 1/(2x) - sum_n B_2n/(2n x^2n)
  double s;
  if (k == 0) {
    s = std::log(x) - 0.5 / x;
    double x2 = x * x, xp = x2;
    for (size_t n = 1; n <= kBernoulli2n.size(); ++n) {
      s -= kBernoulli2n[n - 1] / (2.0 * static_cast<double>(n) * xp);
      xp *= x2;
    }
  } else {
    double lead = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^(k-1)
    double t = std::tgamma(static_cast<double>(k)) * std::pow(x, -k) +
               0.5 * std::tgamma(static_cast<double>(k) + 1.0) * std::pow(x, -(k + 1));
    for (size_t n = 1; n <= kBernoulli2n.size(); ++n) {
      double num = std::tgamma(2.0 * static_cast<double>(n) + k);
      double den = std::tgamma(2.0 * static_cast<double>(n) + 1.0);
      t += kBernoulli2n[n - 1] * (num / den) * std::pow(x, -(2.0 * static_cast<double>(n) + k));
    }
    s = lead * t;
  }
  return s + acc;
}

std::vector<Complex> recip_gamma_jet_at(double s, int order) {
  // F = 1/Gamma satisfies F' = -psi F away from the poles of Gamma; build
  // the jet by the Leibniz recurrence.  psi at s <= 0 via downward recurrence.
  std::vector<double> psi(static_cast<size_t>(std::max(order, 1)), 0.0);
  {
    double base = s;
    int shifts = 0;
    while (base < 1e-9) {
      base += 1.0;
      ++shifts;
    }
    for (int i = 0; i < std::max(order, 1); ++i) psi[static_cast<size_t>(i)] = polygamma(i, base);
    // undo the shifts: psi^(i)(y) = psi^(i)(y+1) - (-1)^i i! y^(-i-1)
    for (int t = 1; t <= shifts; ++t) {
      double y = s + (shifts - t);
      for (int i = 0; i < std::max(order, 1); ++i) {
        double sgn = (i % 2 == 0) ? 1.0 : -1.0;
        psi[static_cast<size_t>(i)] -= sgn * std::tgamma(i + 1.0) * std::pow(y, -(i + 1));
      }
    }
  }

  double g;
  if (s > 0) {
    g = lanczos_gamma(s);
  } else {
    // Gamma(s) = Gamma(s+m) / (s (s+1) ... (s+m-1))
    double prod = 1.0;
    double y = s;
    while (y < 0.5) {
      prod *= y;
      y += 1.0;
    }
    g = lanczos_gamma(y) / prod;
  }

  std::vector<Complex> f(static_cast<size_t>(order) + 1);
  f[0] = 1.0 / g;
  for (int m = 0; m < order; ++m) {
    Complex acc = 0.0;
    for (int i = 0; i <= m; ++i) {
      // C(m,i) * (-psi^(i)) * F^(m-i)
      double binom = std::round(std::exp(std::lgamma(m + 1.0) - std::lgamma(i + 1.0) -
                                         std::lgamma(m - i + 1.0)));
      acc += binom * (-psi[static_cast<size_t>(i)]) * f[static_cast<size_t>(m - i)];
    }
    f[static_cast<size_t>(m) + 1] = acc;
  }
  return f;
}

std::vector<Complex> recip_gamma_jet(const Rational& s, int order) {
  if (order > 12) throw OrderTooLarge("recip_gamma_jet supports order <= 12");
  if (order < 0) throw std::invalid_argument("recip_gamma_jet: negative order");
  double sd = s.to_double();
  if (!(sd > 0.0 && sd <= 1.0))
    throw std::invalid_argument("recip_gamma_jet: s must lie in (0, 1]");
  return recip_gamma_jet_at(sd, order);
}

std::vector<Complex> gamma_jet_at(double s, int order) {
  std::vector<Complex> f = recip_gamma_jet_at(s, order);
  if (std::abs(f[0]) < 1e-300)
    throw PoleAtNonpositiveInteger("Gamma jet requested at a pole");
  // Derivative jets -> Taylor jets, invert, back to derivatives.
  std::vector<Complex> t(f.size());
  double fact = 1.0;
  for (size_t m = 0; m < f.size(); ++m) {
    if (m > 0) fact *= static_cast<double>(m);
    t[m] = f[m] / fact;
  }
  std::vector<Complex> inv(t.size());
  inv[0] = 1.0 / t[0];
  for (size_t m = 1; m < t.size(); ++m) {
    Complex acc = 0.0;
    for (size_t i = 1; i <= m; ++i) acc += t[i] * inv[m - i];
    inv[m] = -acc / t[0];
  }
  fact = 1.0;
  for (size_t m = 0; m < inv.size(); ++m) {
    if (m > 0) fact *= static_cast<double>(m);
    inv[m] *= fact;
  }
  return inv;
}

namespace {

double binom_d(int n, int k) {
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

}  // namespace

NumericLogSeries apply_T_infinity(const ExpLogSeries& f) {
  const LogSeries g = f.body.normalized();
  NumericLogSeries out;
  out.at_infinity = true;
  out.rho = f.rho;
  out.trunc = g.order();
  out.coeff_err = 1e-12;
  for (const auto& [key, v] : g.terms()) {
    // {alpha + n} = {alpha}: one jet per row.
    const Rational s = Rational(1) - key.alpha.frac();
    const std::vector<Complex> jets = recip_gamma_jet(s, key.log_pow);
    for (int i = 0; i <= key.log_pow; ++i) {
      const int nu = key.log_pow;
      const double sgn = ((nu - i) % 2 == 0) ? 1.0 : -1.0;
      const Complex mult = sgn * binom_d(nu, i) * jets[static_cast<size_t>(nu - i)];
      auto& row = out.terms[TermKey{key.alpha, i}];
      if (row.empty()) row.assign(static_cast<size_t>(out.trunc), Complex(0.0));
      for (size_t n = 0; n < v.size(); ++n) row[n] += mult * v[n].to_double();
    }
  }
  return out;
}

NumericLogSeries apply_T_zero(const LogSeries& f) {
  if (!f.base().is_finite() || !f.base().rho.is_zero())
    throw std::invalid_argument("apply_T_zero expects a series at 0");
  const LogSeries g = f.normalized();
  NumericLogSeries out;
  out.at_infinity = false;
  out.trunc = g.order();
  out.coeff_err = 1e-12;
  for (const auto& [key, v] : g.terms()) {
    // beta = -n-alpha-1, {beta} = {-alpha-1}; the sign bookkeeping collapses
    // to all-plus coefficients C(j,i) G^(j-i)(1-{-alpha-1}).
    const Rational s = Rational(1) - (-key.alpha - Rational(1)).frac();
    const std::vector<Complex> jets = recip_gamma_jet(s, key.log_pow);
    for (int i = 0; i <= key.log_pow; ++i) {
      const Complex mult = binom_d(key.log_pow, i) * jets[static_cast<size_t>(key.log_pow - i)];
      auto& row = out.terms[TermKey{key.alpha, i}];
      if (row.empty()) row.assign(static_cast<size_t>(out.trunc), Complex(0.0));
      for (size_t n = 0; n < v.size(); ++n) row[n] += mult * v[n].to_double();
    }
  }
  return out;
}

NumericLogSeries forward_laplace_monomial(const Rational& alpha, int i) {
  if (alpha.is_integer() && alpha.sign() >= 0)
    throw PoleAtNonpositiveInteger("forward Laplace pole: -alpha in Z<=0");
  const std::vector<Complex> gj = gamma_jet_at(-alpha.to_double(), i);
  NumericLogSeries out;
  out.at_infinity = false;
  out.trunc = 1;
  out.coeff_err = 1e-11;
  for (int k = 0; k <= i; ++k) {
    const double sgn = ((i - k) % 2 == 0) ? 1.0 : -1.0;
    const Complex c = binom_d(i, k) * sgn * gj[static_cast<size_t>(i - k)];
    out.terms[TermKey{alpha, k}].assign(1, c);
  }
  return out;
}

Complex NumericLogSeries::eval_at_zero_side(Complex x) const {
  if (at_infinity) throw std::logic_error("eval_at_zero_side: series is at infinity");
  const Complex lx = std::log(x);
  Complex acc = 0.0;
  for (const auto& [key, v] : terms) {
    Complex logpow = std::pow(lx, key.log_pow);
    Complex xa = std::pow(x, key.alpha.to_double());
    Complex xn = 1.0;
    for (size_t n = 0; n < v.size(); ++n) {
      acc += v[n] * xa * xn * logpow;
      xn *= x;
    }
  }
  return acc;
}

NumericLogSeries NumericLogSeries::deriv() const {
  NumericLogSeries r;
  r.at_infinity = at_infinity;
  r.rho = rho;
  r.trunc = trunc;
  r.coeff_err = coeff_err * (static_cast<double>(trunc) + 2.0);
  auto add = [&r](const Rational& a, int j, size_t n, Complex c) {
    auto& row = r.terms[TermKey{a, j}];
    if (row.empty()) row.assign(static_cast<size_t>(r.trunc), Complex(0.0));
    if (n < row.size()) row[n] += c;
  };
  for (const auto& [key, v] : terms) {
    if (!at_infinity) {
      const Rational am1 = key.alpha - Rational(1);
      for (size_t n = 0; n < v.size(); ++n) {
        if (v[n] == Complex(0.0)) continue;
        add(am1, key.log_pow, n, v[n] * (key.alpha.to_double() + static_cast<double>(n)));
        if (key.log_pow >= 1) add(am1, key.log_pow - 1, n, v[n] * static_cast<double>(key.log_pow));
      }
    } else {
      const Rational ap1 = key.alpha + Rational(1);
      for (size_t n = 0; n < v.size(); ++n) {
        if (v[n] == Complex(0.0)) continue;
        add(ap1, key.log_pow, n, -v[n] * (key.alpha.to_double() + static_cast<double>(n) + 1.0));
        if (key.log_pow >= 1) add(ap1, key.log_pow - 1, n, -v[n] * static_cast<double>(key.log_pow));
      }
    }
  }
  return r;
}

}  // namespace microlap::gammanum
