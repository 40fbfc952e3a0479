#pragma once

#include <map>
#include <string>
#include <vector>

#include "microlap/error.hpp"
#include "microlap/poly.hpp"
#include "microlap/rational.hpp"

namespace microlap::exact {

// Base point of an expansion: finite rational point or infinity.
struct BasePoint {
  enum class Kind { Finite, Infinity };
  Kind kind = Kind::Finite;
  Rational rho;  // only meaningful when finite

  static BasePoint finite(const Rational& r) { return {Kind::Finite, r}; }
  static BasePoint infinity() { return {Kind::Infinity, Rational(0)}; }
  bool is_finite() const { return kind == Kind::Finite; }

  friend bool operator==(const BasePoint& a, const BasePoint& b) {
    return a.kind == b.kind && (a.kind == Kind::Infinity || a.rho == b.rho);
  }
};

// One exponent/log row: exponent-class representative alpha and log power j.
struct TermKey {
  Rational alpha;
  int log_pow = 0;

  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.alpha != b.alpha) return a.alpha < b.alpha;
    return a.log_pow < b.log_pow;
  }
  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.alpha == b.alpha && a.log_pow == b.log_pow;
  }
};

// Truncated expansion with exact rational coefficients.
//
// At a finite point rho (u = z - rho), row (alpha, j) with coefficients c
// represents sum_n c[n] * u^(n+alpha) * log(u)^j.
// At infinity, row (alpha, j) represents sum_n c[n] * z^(-n-alpha-1) * log(1/z)^j.
//
// Every row vector has length exactly order(); coefficients with index
// n >= order() are unknown, and no operation ever pretends otherwise.
class LogSeries {
public:
  LogSeries() : base_(BasePoint::finite(Rational(0))), trunc_(0) {}
  LogSeries(BasePoint base, long trunc) : base_(base), trunc_(trunc) {}

  static LogSeries zero(BasePoint base, long trunc) { return LogSeries(base, trunc); }
  // coeff * u^(n+alpha) log(u)^j  (resp. the E_infinity monomial).
  static LogSeries monomial(BasePoint base, const Rational& alpha, int log_pow,
                            long n, const Rational& coeff, long trunc);
  // Plain power series from a coefficient vector (row alpha = 0, j = 0).
  static LogSeries from_power_series(BasePoint base, const std::vector<Rational>& coeffs,
                                     long trunc);

  const BasePoint& base() const { return base_; }
  long order() const { return trunc_; }
  const std::map<TermKey, RatVec>& terms() const { return terms_; }

  void add_term(const Rational& alpha, int log_pow, long n, const Rational& coeff);
  void set_row(const Rational& alpha, int log_pow, RatVec coeffs);
  Rational coeff(const Rational& alpha, int log_pow, long n) const;

  LogSeries operator-() const;
  friend LogSeries operator+(const LogSeries& a, const LogSeries& b);
  friend LogSeries operator-(const LogSeries& a, const LogSeries& b);
  LogSeries operator*(const Rational& s) const;

  // Multiply by (z-rho)^s; finite base only, s >= 0.
  LogSeries mul_u(long s) const;
  // Multiply by z^k; infinity base only, k >= 0.
  LogSeries mul_z_pow(long k) const;
  // d/dz in the ambient variable.
  LogSeries deriv() const;
  // Multiply by a polynomial in the ambient variable z.
  LogSeries mul_poly_in_z(const Poly& p) const;
  // Truncate to a smaller order (no-op if t >= order()).
  LogSeries truncated(long t) const;

  // Merge exponent keys within a class mod Z (minimal representative first),
  // drop identically-zero rows.  Idempotent.
  LogSeries normalized() const;

  bool is_zero() const;  // all stored coefficients vanish
  // Finite base: no log terms and no exponents outside Z>=0 among the known
  // (truncation-visible) coefficients; call on normalized series.
  bool is_holomorphic() const;
  // Infinity base: known coefficients describe a polynomial in z.
  bool is_polynomial_at_infinity() const;

  // Exact equality of everything both sides know (structural zeros filled in;
  // a row key missing from one side must be zero on the other).
  static bool equal_on_common(const LogSeries& a, const LogSeries& b);

  // Flip the overall sign if the first nonzero coefficient (in key order,
  // then index order) is negative; returns whether a flip happened.
  bool sign_normalize();

  std::string str(const std::string& var) const;

private:
  BasePoint base_;
  long trunc_;
  std::map<TermKey, RatVec> terms_;
};

// Coefficientwise (Hadamard) product of two plain power series.
// Throws MixedTermsError when an operand has log terms or exponents
// outside Z>=0.  Result truncation is the exact minimum of the two.
LogSeries hadamard_star(const LogSeries& a, const LogSeries& b);

// Vector-level Hadamard core: elementwise product, length = min length.
RatVec hadamard_star(const RatVec& a, const RatVec& b);

// e^(rho x) * body(1/x), body a LogSeries at infinity in the variable x.
// rho is carried exactly and never folded into coefficients.
struct ExpLogSeries {
  Rational rho;
  LogSeries body;

  ExpLogSeries() : rho(0), body(BasePoint::infinity(), 0) {}
  ExpLogSeries(const Rational& r, LogSeries b) : rho(r), body(std::move(b)) {}
};

}  // namespace microlap::exact
