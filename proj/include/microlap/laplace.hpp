#pragma once

#include <vector>

#include "microlap/diffop.hpp"
#include "microlap/frobenius.hpp"
#include "microlap/linalg.hpp"
#include "microlap/logseries.hpp"

namespace microlap::laplace {

using exact::BasePoint;
using exact::ExpLogSeries;
using exact::LogSeries;
using exact::Poly;
using exact::RatVec;
using exact::Rational;
using weyl::DiffOp;

// L(z^alpha (log z)^j) = sum_k C(j,k) jet_(j-k)(alpha) x^(-alpha-1) log(1/x)^k,
// jets from pochhammer_ratio_jet.  For alpha in Z>=0 the log degree drops by
// exactly one.
LogSeries lseul_monomial(const Rational& alpha, int j, long trunc);

// Preimage witnessing surjectivity: a series p at Finite(0) with
// L(p) = x^(-alpha-1) log(1/x)^k exactly.
LogSeries lseul_preimage_monomial(const Rational& alpha, int k, long trunc);

// L_rho on a series at a finite point: e^(rho x) * (termwise L in the shifted
// variable).  Kernel: plain power series.
ExpLogSeries lrho_transform(const LogSeries& f);

// L_infinity on a series at infinity (log(1/z) = -log z convention); output
// based at 0.  Kernel: polynomials.
LogSeries linf_transform(const LogSeries& f);

// y_(alpha,i)(z) = sum_n (1/i!) (d/dy)^i [Gamma(1-{y})/Gamma(-y-n)]|_(y=alpha) z^n,
// computed via pochhammer_ratio_jet in the shifted ratio.
LogSeries y_alpha_i_series(const Rational& alpha, int i, long trunc);
RatVec y_alpha_i_coeffs(const Rational& alpha, int i, long trunc);

// One basis element of the formal solutions of F(D) at infinity:
// e^(rho x) x^(-t-1) sum_(k'=0..k) ae_(k-k')(1/x) log(1/x)^(k') / k'!.
struct EInftyEntry {
  Rational rho;
  Rational t;     // t_j^rho of the source microsolution ladder
  int ladder_id;  // j
  int k;          // position within I_rho (top segment of the ladder)
  ExpLogSeries series;
  std::vector<RatVec> ae;  // ae_0..ae_k component series (ae_i = 0 below the segment)
  bool sign_flipped = false;
};

struct EInftyBasis {
  std::vector<EInftyEntry> entries;   // rho ascending, ladder segments k ascending
  std::vector<Rational> delta_diag;   // Delta: rho repeated m_rho times
  exact::RatMatrix gamma_inf;         // block upper triangular, diag t_j^rho + 1
};

// Basis construction via microsolutions; both computation routes (direct
// monomial formula and the Hadamard/y series route) are evaluated and must
// agree exactly.
EInftyBasis einfty_basis(const DiffOp& d, long trunc);

struct EZeroEntry {
  LogSeries series;       // at Finite(0), variable x
  Rational s;             // exponent-class bookkeeping (diagonal of Gamma_0)
  int ladder_id;          // source ladder in the S_infinity basis
  int k;                  // source position
  bool sign_flipped = false;
};

struct EZeroBasis {
  std::vector<EZeroEntry> entries;  // in S_infinity order (ladder tops first)
  exact::RatMatrix gamma_zero;      // upper triangular w.r.t. ascending-k order
  std::vector<size_t> gamma_order;  // entry index of each gamma row/column
};

// linf_transform of every S_infinity representative; delta entries, each
// annihilated by F(D) through the stored truncation.
EZeroBasis ezero_basis(const DiffOp& d, long trunc);

}  // namespace microlap::laplace
