#include "microlap/pochhammer.hpp"

#include <stdexcept>

namespace microlap::exact {

namespace {

// Truncated product of jets a*b at the same expansion point.
RatVec jet_mul(const RatVec& a, const RatVec& b, size_t len) {
  RatVec r(len, Rational(0));
  for (size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j + i < len && j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Reciprocal jet of a (a[0] != 0).
RatVec jet_inv(const RatVec& a, size_t len) {
  RatVec r(len, Rational(0));
  Rational inv0 = a[0].inv();
  r[0] = inv0;
  for (size_t m = 1; m < len; ++m) {
    Rational acc(0);
    for (size_t i = 1; i <= m && i < a.size(); ++i) acc += a[i] * r[m - i];
    r[m] = -acc * inv0;
  }
  return r;
}

}  // namespace

std::vector<Rational> pochhammer_ratio_taylor(const Rational& alpha, long order) {
  if (order < 0) throw std::invalid_argument("pochhammer_ratio_taylor: negative order");
  const size_t len = static_cast<size_t>(order) + 1;
  const long n = alpha.floor_long();  // = alpha itself at integers (right-sided branch)

  RatVec jet(len, Rational(0));
  jet[0] = Rational(1);
  if (n >= 0) {
    // Product of (i - y), i = 0..n, expanded at y = alpha: (i - alpha) - t.
    for (long i = 0; i <= n; ++i) {
      RatVec f{Rational(i) - alpha};
      if (len > 1) f.push_back(Rational(-1));
      jet = jet_mul(jet, f, len);
    }
  } else {
    // 1 / product of (k - y), k = n+1..-1; each factor is nonzero at alpha.
    RatVec den(len, Rational(0));
    den[0] = Rational(1);
    for (long k = n + 1; k <= -1; ++k) {
      RatVec f{Rational(k) - alpha};
      if (len > 1) f.push_back(Rational(-1));
      den = jet_mul(den, f, len);
    }
    jet = jet_inv(den, len);
  }
  return jet;
}

std::vector<Rational> pochhammer_ratio_jet(const Rational& alpha, long order) {
  RatVec t = pochhammer_ratio_taylor(alpha, order);
  Rational f(1);
  for (size_t m = 1; m < t.size(); ++m) {
    f *= Rational(static_cast<long>(m));
    t[m] *= f;
  }
  return t;
}

}  // namespace microlap::exact
