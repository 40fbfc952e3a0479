#include "microlap/poly.hpp"

#include <algorithm>
#include <sstream>

namespace microlap::exact {

Poly Poly::monomial(const Rational& c, long k) {
  if (c.is_zero()) return Poly();
  std::vector<Rational> v(static_cast<size_t>(k) + 1, Rational(0));
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::operator-() const {
  std::vector<Rational> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(-x);
  return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return Poly(std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(v));
}

Poly Poly::operator*(const Rational& s) const {
  std::vector<Rational> v;
  v.reserve(c_.size());
  for (const auto& x : c_) v.push_back(x * s);
  return Poly(std::move(v));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> v(c_.size() - 1, Rational(0));
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return Poly(std::move(v));
}

Rational Poly::eval(const Rational& x) const {
  Rational r(0);
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

std::complex<double> Poly::eval(const std::complex<double>& x) const {
  std::complex<double> r(0.0, 0.0);
  for (size_t i = c_.size(); i-- > 0;) r = r * x + std::complex<double>(c_[i].to_double(), 0.0);
  return r;
}

Poly Poly::shift(const Rational& c) const {
  // Horner in (z + c).
  Poly r;
  const Poly lin(std::vector<Rational>{c, Rational(1)});
  for (size_t i = c_.size(); i-- > 0;) r = r * lin + Poly::constant(c_[i]);
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  Poly r = a;
  std::vector<Rational> q(
      a.degree() >= b.degree() ? static_cast<size_t>(a.degree() - b.degree()) + 1 : 0,
      Rational(0));
  Rational lb = b.leading();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    long d = r.degree() - b.degree();
    Rational f = r.leading() / lb;
    q[static_cast<size_t>(d)] = f;
    r = r - b * Poly::monomial(f, d);
  }
  return {Poly(std::move(q)), r};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inv();
}

Poly Poly::squarefree_part() const {
  if (degree() <= 0) return monic();
  Poly g = gcd(*this, derivative());
  return divmod(*this, g).first.monic();
}

namespace {

// Positive divisors of |z| by trial division; corpus coefficients are small.
std::vector<mpz_class> divisors(mpz_class z) {
  z = abs(z);
  std::vector<mpz_class> d;
  if (z == 0) return d;
  for (mpz_class i = 1; i * i <= z; ++i) {
    if (z % i == 0) {
      d.push_back(i);
      if (i * i != z) d.push_back(z / i);
    }
  }
  return d;
}

}  // namespace

std::pair<std::vector<std::pair<Rational, int>>, Poly> Poly::rational_roots() const {
  std::vector<std::pair<Rational, int>> roots;
  Poly rem = *this;
  if (is_zero() || degree() == 0) return {roots, rem};

  // Strip root at 0 first.
  int mult0 = 0;
  while (!rem.is_zero() && rem.coeff(0).is_zero() && rem.degree() >= 1) {
    std::vector<Rational> v(rem.coeffs().begin() + 1, rem.coeffs().end());
    rem = Poly(std::move(v));
    ++mult0;
  }
  if (mult0 > 0) roots.emplace_back(Rational(0), mult0);
  if (rem.degree() <= 0) return {roots, rem};

  // Clear denominators -> primitive integer polynomial; candidates p/q with
  // p | a_0 and q | a_n (rational root theorem).
  mpz_class den_lcm = 1;
  for (const auto& c : rem.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
  std::vector<mpz_class> ic;
  ic.reserve(rem.coeffs().size());
  mpz_class content = 0;
  for (const auto& c : rem.coeffs()) {
    mpz_class v = c.num() * (den_lcm / c.den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ic.push_back(v);
  }
  if (content > 1)
    for (auto& v : ic) v /= content;

  std::vector<Rational> candidates;
  for (const auto& p : divisors(ic.front()))
    for (const auto& q : divisors(ic.back())) {
      candidates.push_back(Rational::from_mpz(p, q));
      candidates.push_back(Rational::from_mpz(-p, q));
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (const auto& r : candidates) {
    int mult = 0;
    while (rem.degree() >= 1 && rem.eval(r).is_zero()) {
      Poly lin(std::vector<Rational>{-r, Rational(1)});
      rem = divmod(rem, lin).first;
      ++mult;
    }
    if (mult > 0) roots.emplace_back(r, mult);
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return {roots, rem};
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = 0; k <= degree(); ++k) {
    Rational c = coeff(k);
    if (c.is_zero()) continue;
    if (!first) os << (c.sign() > 0 ? " + " : " - ");
    else if (c.sign() < 0) os << "-";
    Rational a = c.sign() < 0 ? -c : c;
    bool unit = (a == Rational(1));
    if (k == 0 || !unit) os << a.str();
    if (k > 0) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

}  // namespace microlap::exact
