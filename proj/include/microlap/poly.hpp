#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "microlap/rational.hpp"

namespace microlap::exact {

// Univariate polynomial over Rational, dense coefficient list, trailing
// zeros stripped.  The zero polynomial has an empty coefficient list and
// degree() == kNegInfDegree.
class Poly {
public:
  static constexpr long kNegInfDegree = -1;

  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { strip(); }
  Poly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    strip();
  }
  static Poly constant(const Rational& r) { return Poly(std::vector<Rational>{r}); }
  // c * z^k
  static Poly monomial(const Rational& c, long k);
  static Poly variable() { return monomial(Rational(1), 1); }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(long k) const {
    return (k >= 0 && k < static_cast<long>(c_.size())) ? c_[k] : Rational(0);
  }
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator*(const Rational& s) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly derivative() const;
  Rational eval(const Rational& x) const;
  std::complex<double> eval(const std::complex<double>& x) const;
  // P(z + c), exact Taylor shift.
  Poly shift(const Rational& c) const;

  // Euclidean division; returns (quotient, remainder), b != 0.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  static Poly gcd(Poly a, Poly b);  // monic gcd
  Poly monic() const;

  // Square-free part P / gcd(P, P').
  Poly squarefree_part() const;

  // All rational roots with multiplicities, sorted ascending.
  // The second member of the result is the (root-free) cofactor left after
  // dividing out every rational linear factor.
  std::pair<std::vector<std::pair<Rational, int>>, Poly> rational_roots() const;

  std::string str(const std::string& var = "z") const;

private:
  void strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace microlap::exact
