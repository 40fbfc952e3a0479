#include "microlap/diffop.hpp"

#include <algorithm>
#include <sstream>

#include "microlap/linalg.hpp"

namespace microlap::weyl {

long DiffOp::degree() const {
  long d = Poly::kNegInfDegree;
  for (const auto& p : c_) d = std::max(d, p.degree());
  return d;
}

const Poly& DiffOp::coeff(long j) const {
  static const Poly kZero;
  if (j < 0 || j >= static_cast<long>(c_.size())) return kZero;
  return c_[static_cast<size_t>(j)];
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
  std::vector<Poly> c(std::max(a.c_.size(), b.c_.size()));
  for (size_t j = 0; j < c.size(); ++j)
    c[j] = a.coeff(static_cast<long>(j)) + b.coeff(static_cast<long>(j));
  return DiffOp(std::move(c), a.var_);
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + b * Rational(-1); }

DiffOp DiffOp::operator*(const Rational& s) const {
  std::vector<Poly> c;
  c.reserve(c_.size());
  for (const auto& p : c_) c.push_back(p * s);
  return DiffOp(std::move(c), var_);
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
  if (a.is_zero() || b.is_zero()) return DiffOp::zero(a.var_);
  // C_j = (d/dz)^j o b, built by C_(j+1) = d/dz o C_j:
  // coefficient i of d/dz o C is C_i' + C_(i-1).
  std::vector<Poly> cur(b.c_);
  std::vector<Poly> out(static_cast<size_t>(a.order() + b.order()) + 1);
  for (long j = 0; j <= a.order(); ++j) {
    const Poly& aj = a.coeff(j);
    if (!aj.is_zero())
      for (size_t i = 0; i < cur.size(); ++i)
        out[i] = out[i] + aj * cur[i];
    if (j < a.order()) {
      std::vector<Poly> nxt(cur.size() + 1);
      for (size_t i = 0; i < cur.size(); ++i) nxt[i] = nxt[i] + cur[i].derivative();
      for (size_t i = 0; i < cur.size(); ++i) nxt[i + 1] = nxt[i + 1] + cur[i];
      cur = std::move(nxt);
    }
  }
  return DiffOp(std::move(out), a.var_);
}

DiffOp DiffOp::pow(long e) const {
  DiffOp r = DiffOp::constant(Rational(1), var_);
  for (long i = 0; i < e; ++i) r = r * (*this);
  return r;
}

bool DiffOp::regular_at_infinity() const {
  if (is_zero()) return false;
  const long mu = order(), delta = degree();
  for (long j = 0; j <= mu; ++j) {
    long i = mu - j;  // P_i = coeff(j)
    if (coeff(j).degree() > delta - i) return false;
  }
  return coeff(mu).degree() == delta;
}

LogSeries DiffOp::apply(const LogSeries& f) const {
  LogSeries acc = LogSeries::zero(f.base(), f.order());
  LogSeries d = f;
  for (long j = 0; j <= order(); ++j) {
    if (!coeff(j).is_zero()) acc = acc + d.mul_poly_in_z(coeff(j));
    if (j < order()) d = d.deriv();
  }
  return acc;
}

DiffOp DiffOp::conjugate_by_exp(const Rational& rho) const {
  // d/dz -> d/dz + rho; (d/dz + rho)^j expands binomially (rho is constant).
  std::vector<Poly> out(c_.size());
  for (long j = 0; j <= order(); ++j) {
    const Poly& pj = coeff(j);
    if (pj.is_zero()) continue;
    for (long i = 0; i <= j; ++i)
      out[static_cast<size_t>(i)] =
          out[static_cast<size_t>(i)] + pj * (exact::binomial(j, i) * rho.pow(j - i));
  }
  return DiffOp(std::move(out), var_);
}

DiffOp DiffOp::fourier_laplace() const {
  const char out_var = (var_ == 'z') ? 'x' : 'z';
  // z^m (d/dz)^j  |->  (d/dx)^m o (-x)^j; normal-form rewrite via
  // d^m x^k = sum_i C(m,i) k!/(k-i)! x^(k-i) d^(m-i).
  DiffOp result = DiffOp::zero(out_var);
  for (long j = 0; j <= order(); ++j) {
    const Poly& pj = coeff(j);
    for (long m = 0; m <= pj.degree(); ++m) {
      Rational c = pj.coeff(m);
      if (c.is_zero()) continue;
      c *= Rational(-1).pow(j);
      std::vector<Poly> term(static_cast<size_t>(m) + 1);
      for (long i = 0; i <= std::min(m, j); ++i) {
        // falling factorial j!/(j-i)!
        Rational ff(1);
        for (long t = 0; t < i; ++t) ff *= Rational(j - t);
        term[static_cast<size_t>(m - i)] =
            term[static_cast<size_t>(m - i)] +
            Poly::monomial(c * exact::binomial(m, i) * ff, j - i);
      }
      result = result + DiffOp(std::move(term), out_var);
    }
  }
  return result.with_var(out_var);
}

Poly DiffOp::indicial_at_infinity() const {
  if (!regular_at_infinity())
    throw IrregularAtInfinity("operator is not regular at infinity: " + str());
  const long mu = order(), delta = degree();
  Poly r;
  Poly falling = Poly::constant(Rational(1));
  for (long j = 0; j <= mu; ++j) {
    // a_(mu-j) = coefficient of degree delta - mu + j of P_(mu-j)
    Rational a = coeff(j).coeff(delta - mu + j);
    r = r + falling * a;
    falling = falling * Poly(std::vector<Rational>{Rational(-j), Rational(1)});  // * (z - j)
  }
  if (r.is_zero()) throw IrregularAtInfinity("vanishing indicial polynomial");
  return r;
}

std::pair<long, long> DiffOp::mn_bounds() const {
  const Poly r = indicial_at_infinity();
  const long mu = order(), delta = degree();
  long m = std::max<long>(0, mu - delta);
  auto [roots, cofactor] = r.rational_roots();
  (void)cofactor;  // irrational roots are never integers
  for (const auto& [root, mult] : roots)
    if (root.is_integer() && root >= Rational(m)) m = root.floor_long() + 1;
  return {m, m + delta - mu};
}

SingularityCensus DiffOp::finite_singularities() const {
  const Poly p0 = coeff(order());
  auto [roots, cofactor] = p0.rational_roots();
  if (cofactor.degree() >= 1)
    throw NonRationalSingularity("leading coefficient has a factor without rational roots: " +
                                 cofactor.str(std::string(1, var_)));
  SingularityCensus census;
  census.points = std::move(roots);
  return census;
}

std::pair<long, long> DiffOp::polynomial_index_data() const {
  const auto [m, n] = mn_bounds();
  const long mu = order(), delta = degree();
  // Matrix of D_M : C[z]_<M -> C[z]_<N on monomial bases.
  exact::RatMatrix mat(static_cast<size_t>(n), static_cast<size_t>(m));
  for (long k = 0; k < m; ++k) {
    Poly img;
    for (long j = 0; j <= order(); ++j) {
      // P_(mu-j) * (z^k)^(j)
      if (k < j) continue;
      Rational ff(1);
      for (long t = 0; t < j; ++t) ff *= Rational(k - t);
      img = img + coeff(j) * Poly::monomial(ff, k - j);
    }
    for (long i = 0; i <= img.degree(); ++i) {
      if (i >= n) throw std::logic_error("polynomial_index_data: image escapes C[z]_<N");
      mat.at(static_cast<size_t>(i), static_cast<size_t>(k)) = img.coeff(i);
    }
  }
  const long rank = static_cast<long>(mat.rank());
  const long dim_ker = m - rank;
  const long dim_coker = n - rank;
  if (dim_coker - dim_ker != delta - mu)
    throw std::logic_error("polynomial index identity failed");
  return {dim_coker, dim_ker};
}

namespace {

// Order of vanishing at 0; LONG_MAX/2 for the zero polynomial.
long low_order(const Poly& p) {
  if (p.is_zero()) return 1L << 40;
  for (long i = 0; i <= p.degree(); ++i)
    if (!p.coeff(i).is_zero()) return i;
  return 1L << 40;
}

}  // namespace

bool DiffOp::is_ordinary_point(const Rational& rho) const {
  return !coeff(order()).eval(rho).is_zero();
}

Poly DiffOp::indicial_at(const Rational& rho) const {
  if (is_zero()) throw NotRegularSingular("zero operator");
  const long mu = order();
  std::vector<Poly> q;
  q.reserve(c_.size());
  for (const auto& p : c_) q.push_back(p.shift(rho));  // P(z) in u = z - rho

  long w = 1L << 40;
  for (long j = 0; j <= mu; ++j) w = std::min(w, low_order(q[static_cast<size_t>(j)]) - j);
  if (low_order(q[static_cast<size_t>(mu)]) - mu != w)
    throw NotRegularSingular("Fuchs criterion fails at " + rho.str());

  Poly ind;
  Poly falling = Poly::constant(Rational(1));
  for (long j = 0; j <= mu; ++j) {
    const Poly& qj = q[static_cast<size_t>(j)];
    if (!qj.is_zero() && low_order(qj) - j == w) ind = ind + falling * qj.coeff(low_order(qj));
    falling = falling * Poly(std::vector<Rational>{Rational(-j), Rational(1)});
  }
  return ind;
}

std::string DiffOp::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const std::string v(1, var_);
  const std::string dv = std::string("D") + var_;
  bool first = true;
  for (long j = order(); j >= 0; --j) {
    const Poly& p = coeff(j);
    if (p.is_zero()) continue;
    std::string piece;
    const bool is_const = p.degree() <= 0;
    const bool is_mono =
        [&] {
          int nz = 0;
          for (long k = 0; k <= p.degree(); ++k)
            if (!p.coeff(k).is_zero()) ++nz;
          return nz == 1;
        }();
    if (j == 0) {
      piece = (is_const || is_mono) ? p.str(v) : "(" + p.str(v) + ")";
    } else if (p == Poly::constant(Rational(1))) {
      piece = dv;
    } else if (p == Poly::constant(Rational(-1))) {
      piece = "-" + dv;
    } else if (is_const || is_mono) {
      piece = p.str(v) + "*" + dv;
    } else {
      piece = "(" + p.str(v) + ")*" + dv;
    }
    if (j > 1) piece += "^" + std::to_string(j);
    if (first) {
      os << piece;
      first = false;
    } else if (!piece.empty() && piece[0] == '-') {
      os << " - " << piece.substr(1);
    } else {
      os << " + " << piece;
    }
  }
  return os.str();
}

}  // namespace microlap::weyl
