#pragma once

#include <string>
#include <utility>
#include <vector>

#include "microlap/error.hpp"
#include "microlap/logseries.hpp"
#include "microlap/poly.hpp"
#include "microlap/rational.hpp"

namespace microlap::weyl {

using exact::LogSeries;
using exact::Poly;
using exact::Rational;

// Finite singularities with root multiplicities of the leading coefficient.
struct SingularityCensus {
  std::vector<std::pair<Rational, int>> points;  // ascending by point
  long total() const {
    long t = 0;
    for (const auto& [r, m] : points) t += m;
    return t;
  }
  int multiplicity_of(const Rational& rho) const {
    for (const auto& [r, m] : points)
      if (r == rho) return m;
    return 0;
  }
};

// Differential operator sum_j P_(mu-j)(z) (d/dz)^j in left-coefficient normal
// form (z-polynomials to the left of powers of d/dz).  The normal form is
// unique; all equality tests rely on it.  `var` is cosmetic (printing only).
class DiffOp {
public:
  DiffOp() : var_('z') {}
  explicit DiffOp(std::vector<Poly> coeff_of_djdz, char var = 'z')
      : c_(std::move(coeff_of_djdz)), var_(var) {
    strip();
  }

  static DiffOp zero(char var = 'z') { return DiffOp({}, var); }
  static DiffOp constant(const Rational& r, char var = 'z') {
    return DiffOp({Poly::constant(r)}, var);
  }
  static DiffOp z(char var = 'z') { return DiffOp({Poly::variable()}, var); }
  static DiffOp d_dz(char var = 'z') { return DiffOp({Poly(), Poly::constant(Rational(1))}, var); }

  bool is_zero() const { return c_.empty(); }
  long order() const { return static_cast<long>(c_.size()) - 1; }  // mu
  long degree() const;                                             // delta
  // Coefficient of (d/dz)^j, i.e. P_(mu-j).
  const Poly& coeff(long j) const;
  char var() const { return var_; }
  DiffOp with_var(char v) const {
    DiffOp d = *this;
    d.var_ = v;
    return d;
  }

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b);
  // Composition a o b, rewritten to normal form via (d/dz) z = z (d/dz) + 1.
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);
  DiffOp operator*(const Rational& s) const;
  friend bool operator==(const DiffOp& a, const DiffOp& b) {
    return a.c_ == b.c_;
  }

  DiffOp pow(long e) const;

  // deg P_i <= delta - i for all i, with equality at i = 0.
  bool regular_at_infinity() const;

  // Exact action on a truncated expansion at a finite point or infinity.
  LogSeries apply(const LogSeries& f) const;

  // e^(-rho z) o D o e^(rho z): substitutes d/dz -> d/dz + rho.
  DiffOp conjugate_by_exp(const Rational& rho) const;

  // Image under the algebra morphism z -> d/dx, d/dz -> -x.
  DiffOp fourier_laplace() const;

  // R(z) = sum_j a_(mu-j) z(z-1)...(z-j+1); throws IrregularAtInfinity.
  Poly indicial_at_infinity() const;

  // Smallest M >= max(0, mu-delta) with R(k) != 0 for all integers k >= M,
  // and N = M + delta - mu.
  std::pair<long, long> mn_bounds() const;

  // Roots of P_0 with multiplicities; throws NonRationalSingularity when a
  // factor without rational roots remains.
  SingularityCensus finite_singularities() const;

  // (dim C[z]/D(C[z]), dim ker D_M); requires a regular singularity at
  // infinity.  Verifies dim_coker - dim_ker = delta - mu.
  std::pair<long, long> polynomial_index_data() const;

  // Indicial polynomial at a finite point (Fuchs criterion checked; throws
  // NotRegularSingular).  Degree = order of the operator.
  Poly indicial_at(const Rational& rho) const;
  bool is_ordinary_point(const Rational& rho) const;

  std::string str() const;

private:
  void strip() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Poly> c_;  // c_[j] multiplies (d/dz)^j
  char var_;
};

}  // namespace microlap::weyl
