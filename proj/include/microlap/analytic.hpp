#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "microlap/diffop.hpp"
#include "microlap/gammanum.hpp"
#include "microlap/laplace.hpp"

namespace microlap::analytic {

using Complex = std::complex<double>;
using exact::ExpLogSeries;
using exact::LogSeries;
using exact::Poly;
using exact::Rational;
using weyl::DiffOp;

// A direction carried as an exact rational multiple of pi, so anti-Stokes
// admissibility can be decided exactly against rational singularity data.
struct Direction {
  Rational times_pi;
  double radians() const;
  Direction negated() const { return Direction{-times_pi}; }
};

// With all finite singularities rational, arg(rho - rho') is 0 mod pi; a
// direction is anti-Stokes iff it is an integer multiple of pi (and there
// are at least two distinct singularities).
bool is_anti_stokes(const Direction& theta, const weyl::SingularityCensus& census);

// Every tolerance/threshold knob in one place.
struct Tolerances {
  double quad_rel = 1e-11;       // adaptive panel target (relative)
  double ode_step_ratio = 0.4;   // step <= ratio * distance to nearest singularity
  int taylor_order = 30;
  long max_steps = 40000;
  double tail_eps = 1e-15;       // ray tail cutoff (relative to peak)
  double clearance_frac = 0.12;  // required path clearance (fraction of min gap)
  double cond_limit = 1e8;
  double watson_floor = 1e-6;    // numeric floor on top of the first-omitted-term bound
  double probe_radius = 0.25;    // local-basis probe distance (fraction of min gap)
  double base_radius = 12.0;     // |z| of the near-infinity expansion base point
  double sample_lo = 8.0, sample_hi = 64.0;  // atheta sample annulus
  int sample_count = 8;

  static Tolerances defaults() { return {}; }
  static Tolerances strict();
};

// Contour selection for contour_laplace.
struct PathSpec {
  enum class Kind { Waypoints, GammaRho, GammaPrimeR };
  Kind kind = Kind::Waypoints;
  std::vector<Complex> waypoints;
  Rational rho{0};     // GammaRho center
  double theta = 0.0;  // cut-plane direction for the contour kinds
  double radius = 0.0;  // GammaPrimeR circle radius

  static PathSpec points(std::vector<Complex> pts);
  static PathSpec gamma_rho(const Rational& rho, double theta);
  static PathSpec gamma_prime_r(double R, double theta);
};

// Complex matrix with labels and diagnostics.
struct NumericMatrix {
  Eigen::MatrixXcd m;
  std::vector<std::string> row_labels, col_labels;
  double residual = 0.0;
  double cond = 0.0;
  Complex det() const { return m.determinant(); }
};

// Holonomic function handle: op f = rhs, with the jet (f, f', ..., f^(mu-1))
// given at z0 on a definite branch.
struct FunctionSpec {
  DiffOp op;
  Poly rhs;
  std::vector<Complex> jet;
  Complex z0;
};

// Local Taylor polynomial of a continued solution, valid on |z-center| < radius.
struct TaylorModel {
  Complex center;
  double radius = 0.0;
  std::vector<Complex> a;
  Complex eval(Complex z) const;
};

// Taylor-stepping analytic continuation engine for one operator.
class Continuator {
public:
  Continuator(DiffOp op, Poly rhs, Tolerances tol);

  // Continue a jet along the polyline; optionally collect models and the
  // covered sub-segments (model index, from, to).
  struct Leg {
    size_t model;
    Complex from, to;
  };
  std::vector<Complex> walk(std::vector<Complex> jet, Complex from,
                            const std::vector<Complex>& polyline,
                            std::vector<TaylorModel>* models = nullptr,
                            std::vector<Leg>* legs = nullptr);

  double distance_to_singularities(Complex z) const;
  const std::vector<Complex>& singularities() const { return sing_; }

private:
  TaylorModel local_model(const std::vector<Complex>& jet, Complex center) const;
  DiffOp op_;
  Poly rhs_;
  Tolerances tol_;
  std::vector<Complex> sing_;
  long order_;
};

// Continuation of f along a waypoint path; error estimate from step halving.
std::vector<Complex> ode_continue(const FunctionSpec& f, const std::vector<Complex>& waypoints,
                                  const Tolerances& tol, double* err_est = nullptr);

// (1/2 pi i) * integral over the path of f(z) e^(xz) dz for the contour
// kinds of the local/global inverse Laplace transforms.
Complex contour_laplace(const FunctionSpec& f, const PathSpec& path, Complex x,
                        const Tolerances& tol, double* err_est = nullptr);

// Borel-Laplace 1-summation of e^(rho x) * (plain series in 1/x) along the
// ray of direction theta: e^(rho x) (a_0 + integral of g(z) e^(-xz) dz).
// borel_op/borel_rhs must annihilate the formal Borel transform g; this is
// verified exactly on the stored coefficients before integrating.
Complex borel_sum(const ExpLogSeries& ae, const DiffOp& borel_op, const Poly& borel_rhs,
                  const Direction& theta, Complex x, const weyl::SingularityCensus& census,
                  const Tolerances& tol, double* err_est = nullptr);

// Transport of the annihilator to the Borel plane: F(conj(F(d), rho)) with an
// inhomogeneous polynomial part read off (and verified) from the entry's
// exact coefficients.
std::pair<DiffOp, Poly> borel_ode_for_entry(const DiffOp& d, const laplace::EInftyEntry& entry);

// Sum a (possibly divergent) numeric expansion at infinity to its smallest
// term; returns (value, magnitude of the first omitted term).
std::pair<Complex, double> sum_optimal_truncation(const gammanum::NumericLogSeries& s, Complex x);

// Evaluate an exact expansion and njets-1 derivatives at z, on the branch
// with arg(z - rho) = arg_ref (finite base) resp. arg(z) = arg_ref (infinity).
std::vector<Complex> eval_series_jet(const LogSeries& s, Complex z, double arg_ref, int njets);

// Connection matrices.
NumericMatrix kappa_matrix(const DiffOp& d, const Direction& theta, long trunc,
                           const Tolerances& tol);
NumericMatrix atheta_matrix(const DiffOp& d, const Direction& theta, long trunc,
                            const Tolerances& tol);
NumericMatrix stokes_matrix(const DiffOp& d, const Direction& theta1, const Direction& theta2,
                            long trunc, const Tolerances& tol);

struct WatsonRadiusResult {
  double radius = 0.0;
  Complex contour_value;
  Complex series_value;
  double bound = 0.0;      // first omitted term + numeric floor
  double deviation = 0.0;  // |contour - series|
  bool pass = false;
};

struct WatsonReport {
  Rational rho{0};
  std::vector<std::vector<WatsonRadiusResult>> per_entry;  // [micro entry][radius]
  bool pass = false;
};

// Prop. 5 / Watson's lemma check: Gamma_rho quadrature against the optimally
// truncated asymptotic series of T L_rho(micro) at x = r e^(i theta).
WatsonReport watson_check(const DiffOp& d, const Rational& rho, const Direction& theta,
                          long trunc, const Tolerances& tol);

struct Prop6Report {
  Complex contour_value;  // Gamma'_R limit
  Complex series_value;   // entire-series formula C_0 L_inf f evaluated at x
  double deviation = 0.0;
};

// Prop. 6 check on one S_infinity representative (by index in sinfty order).
Prop6Report prop6_check(const DiffOp& d, size_t sinfty_index, const Direction& theta, Complex x,
                        long trunc, const Tolerances& tol);

}  // namespace microlap::analytic
