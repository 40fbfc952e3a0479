#include <algorithm>
#include <cmath>

#include "microlap/analytic.hpp"

namespace microlap::analytic {

double Direction::radians() const { return times_pi.to_double() * M_PI; }

bool is_anti_stokes(const Direction& theta, const weyl::SingularityCensus& census) {
  if (census.points.size() < 2) return false;
  return theta.times_pi.is_integer();
}

Tolerances Tolerances::strict() {
  Tolerances t;
  t.quad_rel = 1e-12;
  t.taylor_order = 40;
  t.ode_step_ratio = 0.3;
  t.watson_floor = 1e-7;
  return t;
}

namespace {

// Coefficients of p(center + h) as complex numbers (synthetic Taylor shift).
std::vector<Complex> shifted_coeffs(const Poly& p, Complex center) {
  std::vector<Complex> c;
  c.reserve(static_cast<size_t>(p.degree() + 1));
  for (long k = 0; k <= p.degree(); ++k) c.push_back(Complex(p.coeff(k).to_double(), 0.0));
  if (c.empty()) return c;
  const size_t n = c.size();
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t j = n - 1; j > i; --j) c[j - 1] += center * c[j];
  return c;  // c[k] = coefficient of h^k
}

std::vector<Complex> poly_roots(const Poly& p) {
  std::vector<Complex> roots;
  if (p.degree() < 1) return roots;
  const long n = p.degree();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const Complex lead(p.leading().to_double(), 0.0);
  for (long i = 0; i < n; ++i) {
    companion(i, n - 1) = -Complex(p.coeff(i).to_double(), 0.0) / lead;
    if (i > 0) companion(i, i - 1) = 1.0;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  for (long i = 0; i < n; ++i) roots.push_back(es.eigenvalues()(i));
  return roots;
}

double falling(double n, long j) {
  double f = 1.0;
  for (long t = 0; t < j; ++t) f *= (n - static_cast<double>(t));
  return f;
}

}  // namespace

Complex TaylorModel::eval(Complex z) const {
  const Complex h = z - center;
  Complex acc = 0.0;
  for (size_t i = a.size(); i-- > 0;) acc = acc * h + a[i];
  return acc;
}

Continuator::Continuator(DiffOp op, Poly rhs, Tolerances tol)
    : op_(std::move(op)), rhs_(std::move(rhs)), tol_(tol), order_(op_.order()) {
  sing_ = poly_roots(op_.coeff(order_));
}

double Continuator::distance_to_singularities(Complex z) const {
  double d = 1e100;
  for (const auto& s : sing_) d = std::min(d, std::abs(z - s));
  return d;
}

TaylorModel Continuator::local_model(const std::vector<Complex>& jet, Complex center) const {
  const long mu = order_;
  const long L = tol_.taylor_order + mu;
  std::vector<std::vector<Complex>> p(static_cast<size_t>(mu) + 1);
  for (long j = 0; j <= mu; ++j) p[static_cast<size_t>(j)] = shifted_coeffs(op_.coeff(j), center);
  std::vector<Complex> r = shifted_coeffs(rhs_, center);

  std::vector<Complex> a(static_cast<size_t>(L) + 1, Complex(0.0));
  double fact = 1.0;
  for (long i = 0; i < mu; ++i) {
    if (i > 0) fact *= static_cast<double>(i);
    a[static_cast<size_t>(i)] = jet[static_cast<size_t>(i)] / fact;
  }
  const Complex lead = p[static_cast<size_t>(mu)][0];
  for (long m = 0; m + mu <= L; ++m) {
    Complex acc = (m < static_cast<long>(r.size())) ? r[static_cast<size_t>(m)] : Complex(0.0);
    for (long j = 0; j <= mu; ++j) {
      const auto& pj = p[static_cast<size_t>(j)];
      for (long k = 0; k < static_cast<long>(pj.size()) && k <= m; ++k) {
        if (j == mu && k == 0) continue;
        if (pj[static_cast<size_t>(k)] == Complex(0.0)) continue;
        const long idx = m - k + j;
        acc -= pj[static_cast<size_t>(k)] * falling(static_cast<double>(idx), j) *
               a[static_cast<size_t>(idx)];
      }
    }
    a[static_cast<size_t>(m + mu)] = acc / (lead * falling(static_cast<double>(m + mu), mu));
  }

  TaylorModel model;
  model.center = center;
  model.radius = tol_.ode_step_ratio * distance_to_singularities(center);
  model.a = std::move(a);
  return model;
}

std::vector<Complex> Continuator::walk(std::vector<Complex> jet, Complex from,
                                       const std::vector<Complex>& polyline,
                                       std::vector<TaylorModel>* models,
                                       std::vector<Leg>* legs) {
  Complex cur = from;
  long steps = 0;
  for (const Complex& target : polyline) {
    while (std::abs(target - cur) > 1e-15 * (1.0 + std::abs(target))) {
      if (++steps > tol_.max_steps) throw StepLimitExceeded("continuation step budget exhausted");
      const double dsing = distance_to_singularities(cur);
      if (dsing <= 0.0) throw PathTooCloseToSingularity("continuation hit a singularity");
      TaylorModel model = local_model(jet, cur);
      const double reach = model.radius;
      const double want = std::abs(target - cur);
      const double h = std::min(want, reach);
      const Complex next = cur + (target - cur) / want * h;

      // jet at next from the model
      const long mu = order_;
      std::vector<Complex> nj(static_cast<size_t>(mu), Complex(0.0));
      const Complex hh = next - cur;
      for (long i = 0; i < mu; ++i) {
        Complex acc = 0.0;
        for (long n = static_cast<long>(model.a.size()) - 1; n >= i; --n)
          acc = acc * hh + model.a[static_cast<size_t>(n)] * falling(static_cast<double>(n), i) /
                               std::pow(1.0, 1.0);  // falling already includes permutation factor
        // Horner above multiplies one power too many between terms; redo plainly:
        nj[static_cast<size_t>(i)] = 0.0;
        Complex hp = 1.0;
        for (long n = i; n < static_cast<long>(model.a.size()); ++n) {
          nj[static_cast<size_t>(i)] += model.a[static_cast<size_t>(n)] *
                                        falling(static_cast<double>(n), i) * hp;
          hp *= hh;
        }
      }
      if (models) models->push_back(model);
      if (legs && models) legs->push_back({models->size() - 1, cur, next});
      jet = std::move(nj);
      cur = next;
    }
  }
  return jet;
}

std::vector<Complex> ode_continue(const FunctionSpec& f, const std::vector<Complex>& waypoints,
                                  const Tolerances& tol, double* err_est) {
  Continuator cont(f.op, f.rhs, tol);
  std::vector<Complex> jet = cont.walk(f.jet, f.z0, waypoints);
  if (err_est) {
    Tolerances finer = tol;
    finer.ode_step_ratio = tol.ode_step_ratio * 0.5;
    Continuator cont2(f.op, f.rhs, finer);
    std::vector<Complex> jet2 = cont2.walk(f.jet, f.z0, waypoints);
    double e = 0.0;
    for (size_t i = 0; i < jet.size(); ++i) e = std::max(e, std::abs(jet[i] - jet2[i]));
    *err_est = e;
  }
  return jet;
}

std::vector<Complex> eval_series_jet(const LogSeries& s, Complex z, double arg_ref, int njets) {
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(njets));
  LogSeries cur = s;
  for (int d = 0; d < njets; ++d) {
    Complex acc = 0.0;
    if (s.base().is_finite()) {
      const Complex u = z - Complex(s.base().rho.to_double(), 0.0);
      const Complex logu(std::log(std::abs(u)), arg_ref);
      for (const auto& [key, v] : cur.terms()) {
        const Complex ua = std::exp(Complex(key.alpha.to_double(), 0.0) * logu);
        const Complex lp = std::pow(logu, key.log_pow);
        Complex un = 1.0;
        for (size_t n = 0; n < v.size(); ++n) {
          if (!v[n].is_zero()) acc += v[n].to_double() * ua * un * lp;
          un *= u;
        }
      }
    } else {
      const Complex logz(std::log(std::abs(z)), arg_ref);
      const Complex log_inv = -logz;
      const Complex zinv = std::exp(-logz);
      for (const auto& [key, v] : cur.terms()) {
        const Complex za = std::exp(-(Complex(key.alpha.to_double(), 0.0) + 1.0) * logz);
        const Complex lp = std::pow(log_inv, key.log_pow);
        Complex zn = 1.0;
        for (size_t n = 0; n < v.size(); ++n) {
          if (!v[n].is_zero()) acc += v[n].to_double() * za * zn * lp;
          zn *= zinv;
        }
      }
    }
    out.push_back(acc);
    if (d + 1 < njets) cur = cur.deriv();
  }
  return out;
}

}  // namespace microlap::analytic
