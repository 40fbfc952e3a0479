#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace microlap::exact {

class Rational;
using RatVec = std::vector<Rational>;

// Exact rational number, canonical form (reduced, positive denominator).
// Thin value wrapper over GMP's mpq_class; every operation is exact.
class Rational {
public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit by design
  Rational(long num, long den) : q_(num, den) { q_.canonicalize(); }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Rational(const std::string& s) : q_(s) { q_.canonicalize(); }

  static Rational from_mpz(const mpz_class& num, const mpz_class& den) {
    mpq_class q(num, den);
    q.canonicalize();
    return Rational(q);
  }

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  // Largest integer <= *this.
  mpz_class floor_z() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return f;
  }
  long floor_long() const {
    mpz_class f = floor_z();
    return f.get_si();
  }
  // Fractional part {x} in [0,1); the class key of an exponent mod Z.
  Rational frac() const { return *this - Rational::from_int(floor_z()); }

  static Rational from_int(const mpz_class& z) { return Rational(mpq_class(z)); }

  double to_double() const { return q_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) { q_ /= o.q_; return *this; }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  Rational inv() const { return Rational(mpq_class(1) / q_); }

  Rational pow(long e) const {
    if (e < 0) return inv().pow(-e);
    mpq_class r(1), b = q_;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return Rational(r);
  }

  // Canonical "p/q" (or "p" when q == 1); used for deterministic JSON output.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

private:
  mpq_class q_;
};

inline Rational factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational::from_int(f);
}

inline Rational binomial(long n, long k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational::from_int(b);
}

inline std::complex<double> to_complex(const Rational& r) {
  return {r.to_double(), 0.0};
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace microlap::exact
