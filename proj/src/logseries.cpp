#include "microlap/logseries.hpp"

#include <algorithm>
#include <sstream>

namespace microlap::exact {

LogSeries LogSeries::monomial(BasePoint base, const Rational& alpha, int log_pow,
                              long n, const Rational& coeff, long trunc) {
  if (n < 0 || n >= trunc)
    throw std::invalid_argument("LogSeries::monomial: index outside truncation");
  LogSeries s(base, trunc);
  s.add_term(alpha, log_pow, n, coeff);
  return s;
}

LogSeries LogSeries::from_power_series(BasePoint base, const std::vector<Rational>& coeffs,
                                       long trunc) {
  LogSeries s(base, trunc);
  RatVec v(static_cast<size_t>(trunc), Rational(0));
  for (size_t i = 0; i < coeffs.size() && i < static_cast<size_t>(trunc); ++i)
    v[i] = coeffs[i];
  s.set_row(Rational(0), 0, std::move(v));
  return s;
}

void LogSeries::add_term(const Rational& alpha, int log_pow, long n, const Rational& coeff) {
  if (n < 0 || n >= trunc_) return;  // outside the known window
  auto& row = terms_[TermKey{alpha, log_pow}];
  if (row.empty()) row.assign(static_cast<size_t>(trunc_), Rational(0));
  row[static_cast<size_t>(n)] += coeff;
}

void LogSeries::set_row(const Rational& alpha, int log_pow, RatVec coeffs) {
  coeffs.resize(static_cast<size_t>(trunc_), Rational(0));
  terms_[TermKey{alpha, log_pow}] = std::move(coeffs);
}

Rational LogSeries::coeff(const Rational& alpha, int log_pow, long n) const {
  auto it = terms_.find(TermKey{alpha, log_pow});
  if (it == terms_.end() || n < 0 || n >= static_cast<long>(it->second.size()))
    return Rational(0);
  return it->second[static_cast<size_t>(n)];
}

LogSeries LogSeries::operator-() const {
  LogSeries r(base_, trunc_);
  for (const auto& [k, v] : terms_) {
    RatVec w;
    w.reserve(v.size());
    for (const auto& x : v) w.push_back(-x);
    r.terms_[k] = std::move(w);
  }
  return r;
}

LogSeries operator+(const LogSeries& a, const LogSeries& b) {
  if (!(a.base_ == b.base_))
    throw std::invalid_argument("LogSeries: mismatched base points in +");
  LogSeries r(a.base_, std::min(a.trunc_, b.trunc_));
  auto put = [&r](const std::map<TermKey, RatVec>& src) {
    for (const auto& [k, v] : src) {
      auto& row = r.terms_[k];
      if (row.empty()) row.assign(static_cast<size_t>(r.trunc_), Rational(0));
      for (size_t i = 0; i < v.size() && i < row.size(); ++i) row[i] += v[i];
    }
  };
  put(a.terms_);
  put(b.terms_);
  return r;
}

LogSeries operator-(const LogSeries& a, const LogSeries& b) { return a + (-b); }

LogSeries LogSeries::operator*(const Rational& s) const {
  LogSeries r(base_, trunc_);
  if (s.is_zero()) return r;
  for (const auto& [k, v] : terms_) {
    RatVec w;
    w.reserve(v.size());
    for (const auto& x : v) w.push_back(x * s);
    r.terms_[k] = std::move(w);
  }
  return r;
}

LogSeries LogSeries::mul_u(long s) const {
  if (!base_.is_finite()) throw std::logic_error("mul_u needs a finite base point");
  if (s < 0) throw std::logic_error("mul_u: negative power");
  LogSeries r(base_, trunc_);
  for (const auto& [k, v] : terms_)
    r.terms_[TermKey{k.alpha + Rational(s), k.log_pow}] = v;
  return r;
}

LogSeries LogSeries::mul_z_pow(long k) const {
  if (base_.is_finite()) throw std::logic_error("mul_z_pow needs the infinity base");
  if (k < 0) throw std::logic_error("mul_z_pow: negative power");
  LogSeries r(base_, trunc_);
  for (const auto& [key, v] : terms_)
    r.terms_[TermKey{key.alpha - Rational(k), key.log_pow}] = v;
  return r;
}

LogSeries LogSeries::deriv() const {
  LogSeries r(base_, trunc_);
  if (base_.is_finite()) {
    // d/dz [u^(n+a) log^j u] = (n+a) u^(n+a-1) log^j + j u^(n+a-1) log^(j-1)
    for (const auto& [k, v] : terms_) {
      const Rational am1 = k.alpha - Rational(1);
      for (long n = 0; n < static_cast<long>(v.size()); ++n) {
        if (v[static_cast<size_t>(n)].is_zero()) continue;
        const Rational& c = v[static_cast<size_t>(n)];
        r.add_term(am1, k.log_pow, n, c * (Rational(n) + k.alpha));
        if (k.log_pow >= 1) r.add_term(am1, k.log_pow - 1, n, c * Rational(k.log_pow));
      }
    }
  } else {
    // d/dz [z^(-n-a-1) log(1/z)^j]
    //   = (-n-a-1) z^(-n-(a+1)-1) log(1/z)^j - j z^(-n-(a+1)-1) log(1/z)^(j-1)
    for (const auto& [k, v] : terms_) {
      const Rational ap1 = k.alpha + Rational(1);
      for (long n = 0; n < static_cast<long>(v.size()); ++n) {
        if (v[static_cast<size_t>(n)].is_zero()) continue;
        const Rational& c = v[static_cast<size_t>(n)];
        r.add_term(ap1, k.log_pow, n, c * (-(Rational(n) + k.alpha + Rational(1))));
        if (k.log_pow >= 1) r.add_term(ap1, k.log_pow - 1, n, c * Rational(-k.log_pow));
      }
    }
  }
  return r;
}

LogSeries LogSeries::mul_poly_in_z(const Poly& p) const {
  LogSeries r = zero(base_, trunc_);
  if (p.is_zero() || terms_.empty()) return r;
  if (base_.is_finite()) {
    const Poly q = p.shift(base_.rho);  // p(z) = q(u), u = z - rho
    for (long k = 0; k <= q.degree(); ++k) {
      Rational c = q.coeff(k);
      if (c.is_zero()) continue;
      r = r + mul_u(k) * c;
    }
  } else {
    for (long k = 0; k <= p.degree(); ++k) {
      Rational c = p.coeff(k);
      if (c.is_zero()) continue;
      r = r + mul_z_pow(k) * c;
    }
  }
  return r;
}

LogSeries LogSeries::truncated(long t) const {
  if (t >= trunc_) return *this;
  LogSeries r(base_, t);
  for (const auto& [k, v] : terms_)
    r.terms_[k] = RatVec(v.begin(), v.begin() + std::min<size_t>(v.size(), static_cast<size_t>(t)));
  return r;
}

LogSeries LogSeries::normalized() const {
  // Group keys by exponent class mod Z (classes of rationals share frac()).
  std::map<Rational, Rational> class_rep;  // frac -> minimal alpha present
  for (const auto& [k, v] : terms_) {
    Rational f = k.alpha.frac();
    auto it = class_rep.find(f);
    if (it == class_rep.end() || k.alpha < it->second) class_rep[f] = k.alpha;
  }
  LogSeries r(base_, trunc_);
  for (const auto& [k, v] : terms_) {
    const Rational rep = class_rep.at(k.alpha.frac());
    const long s = (k.alpha - rep).floor_long();  // integer shift >= 0
    for (long n = 0; n < static_cast<long>(v.size()); ++n)
      if (!v[static_cast<size_t>(n)].is_zero())
        r.add_term(rep, k.log_pow, n + s, v[static_cast<size_t>(n)]);
  }
  // Drop all-zero rows.
  for (auto it = r.terms_.begin(); it != r.terms_.end();) {
    bool zero = std::all_of(it->second.begin(), it->second.end(),
                            [](const Rational& x) { return x.is_zero(); });
    it = zero ? r.terms_.erase(it) : std::next(it);
  }
  return r;
}

bool LogSeries::is_zero() const {
  for (const auto& [k, v] : terms_)
    for (const auto& x : v)
      if (!x.is_zero()) return false;
  return true;
}

bool LogSeries::is_holomorphic() const {
  if (!base_.is_finite()) throw std::logic_error("is_holomorphic needs a finite base point");
  for (const auto& [k, v] : terms_) {
    long n0 = -1;
    for (long n = 0; n < static_cast<long>(v.size()); ++n)
      if (!v[static_cast<size_t>(n)].is_zero()) {
        n0 = n;
        break;
      }
    if (n0 < 0) continue;  // zero row
    if (k.log_pow > 0) return false;
    if (!k.alpha.is_integer()) return false;
    if (k.alpha + Rational(n0) < Rational(0)) return false;
  }
  return true;
}

bool LogSeries::is_polynomial_at_infinity() const {
  if (base_.is_finite()) throw std::logic_error("is_polynomial_at_infinity needs infinity base");
  for (const auto& [k, v] : terms_) {
    for (long n = 0; n < static_cast<long>(v.size()); ++n) {
      if (v[static_cast<size_t>(n)].is_zero()) continue;
      if (k.log_pow > 0) return false;
      if (!k.alpha.is_integer()) return false;
      // exponent of z is -n-alpha-1; need it >= 0
      if (Rational(-n) - k.alpha - Rational(1) < Rational(0)) return false;
    }
  }
  return true;
}

bool LogSeries::equal_on_common(const LogSeries& a, const LogSeries& b) {
  if (!(a.base_ == b.base_)) return false;
  const LogSeries na = a.normalized(), nb = b.normalized();

  struct RowRef {
    const Rational* alpha = nullptr;
    const RatVec* v = nullptr;
  };
  // (class frac, log_pow) -> row on each side
  std::map<std::pair<Rational, int>, std::pair<RowRef, RowRef>> rows;
  for (const auto& [k, v] : na.terms_) rows[{k.alpha.frac(), k.log_pow}].first = {&k.alpha, &v};
  for (const auto& [k, v] : nb.terms_) rows[{k.alpha.frac(), k.log_pow}].second = {&k.alpha, &v};

  for (const auto& [key, pr] : rows) {
    const RowRef &ra = pr.first, &rb = pr.second;
    if (!ra.v && !rb.v) continue;
    if (!ra.v || !rb.v) {
      const RatVec& v = ra.v ? *ra.v : *rb.v;
      for (const auto& x : v)
        if (!x.is_zero()) return false;
      continue;
    }
    const Rational rep = std::min(*ra.alpha, *rb.alpha);
    const long sa = (*ra.alpha - rep).floor_long();
    const long sb = (*rb.alpha - rep).floor_long();
    const long ha = sa + static_cast<long>(ra.v->size());
    const long hb = sb + static_cast<long>(rb.v->size());
    const long h = std::min(ha, hb);
    for (long n = 0; n < h; ++n) {
      Rational va = (n < sa) ? Rational(0) : (*ra.v)[static_cast<size_t>(n - sa)];
      Rational vb = (n < sb) ? Rational(0) : (*rb.v)[static_cast<size_t>(n - sb)];
      if (va != vb) return false;
    }
    // Beyond the common horizon, whatever only one side knows must be zero
    // only if the other side's row is structurally zero there -- unknowable,
    // so no constraint.
  }
  return true;
}

bool LogSeries::sign_normalize() {
  for (const auto& [k, v] : terms_) {
    for (const auto& x : v) {
      if (x.is_zero()) continue;
      if (x.sign() < 0) {
        *this = -(*this);
        return true;
      }
      return false;
    }
  }
  return false;
}

std::string LogSeries::str(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first_row = true;
  for (const auto& [k, v] : terms_) {
    if (!first_row) os << " + ";
    first_row = false;
    os << "[";
    if (base_.is_finite()) {
      std::string u = base_.rho.is_zero() ? var : "(" + var + "-" + base_.rho.str() + ")";
      os << u << "^(" << k.alpha.str() << "+n)";
      if (k.log_pow > 0) os << "*log(" << u << ")^" << k.log_pow;
    } else {
      os << var << "^(-n-" << k.alpha.str() << "-1)";
      if (k.log_pow > 0) os << "*log(1/" << var << ")^" << k.log_pow;
    }
    os << "] n=0..: ";
    const size_t show = std::min<size_t>(v.size(), 8);
    for (size_t i = 0; i < show; ++i) {
      if (i) os << ", ";
      os << v[i].str();
    }
    if (v.size() > show) os << ", ...";
    os << " (order " << v.size() << ")";
  }
  return os.str();
}

RatVec hadamard_star(const RatVec& a, const RatVec& b) {
  RatVec r(std::min(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

namespace {

// Extract the coefficient vector of a plain power series; knowledge horizon
// out through the smallest unknown index.
std::pair<RatVec, long> as_power_series(const LogSeries& s) {
  const LogSeries n = s.normalized();
  long horizon = n.order();
  RatVec c(static_cast<size_t>(n.order()), Rational(0));
  for (const auto& [k, v] : n.terms()) {
    if (k.log_pow > 0)
      throw MixedTermsError("hadamard_star operand has log terms");
    if (!k.alpha.is_integer() || k.alpha.sign() < 0)
      throw MixedTermsError("hadamard_star operand has exponents outside Z>=0");
    const long s0 = k.alpha.floor_long();
    horizon = std::min(horizon, s0 + static_cast<long>(v.size()));
    for (long i = 0; i < static_cast<long>(v.size()); ++i) {
      const long n_out = s0 + i;
      if (n_out < static_cast<long>(c.size())) c[static_cast<size_t>(n_out)] += v[static_cast<size_t>(i)];
    }
  }
  c.resize(static_cast<size_t>(std::max<long>(horizon, 0)), Rational(0));
  return {c, horizon};
}

}  // namespace

LogSeries hadamard_star(const LogSeries& a, const LogSeries& b) {
  auto [ca, ha] = as_power_series(a);
  auto [cb, hb] = as_power_series(b);
  const long t = std::min(ha, hb);
  RatVec prod = hadamard_star(ca, cb);
  prod.resize(static_cast<size_t>(std::max<long>(t, 0)), Rational(0));
  return LogSeries::from_power_series(a.base(), prod, std::max<long>(t, 0));
}

}  // namespace microlap::exact
