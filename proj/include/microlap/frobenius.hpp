#pragma once

#include <vector>

#include "microlap/diffop.hpp"
#include "microlap/logseries.hpp"

namespace microlap::frobenius {

using exact::BasePoint;
using exact::LogSeries;
using exact::Poly;
using exact::RatVec;
using exact::Rational;
using weyl::DiffOp;

// One Frobenius solution
//   f_(j,k) = u^t * sum_(k'=0..k) g_(k-k')(u) log(u)^(k') / k'!
// at a finite point (u = z - rho).  At infinity u is 1/z and t is the
// 1/z-exponent: f = (1/z)^t * sum g_(k-k')(1/z) log(1/z)^(k')/k'!.
// The g series are shared along a ladder; entry k carries the prefix it uses.
struct LogSolution {
  BasePoint base;
  Rational t;
  std::vector<RatVec> g;  // g_0..g_k, each of length trunc
  int ladder_id = 0;      // which ladder of the basis this entry belongs to
  int k = 0;              // position within the ladder (log depth)
  long trunc = 0;

  LogSeries assemble() const;
  bool holomorphic() const;  // finite base only
};

// Microsolution basis at a singularity: the non-holomorphic members of the
// local basis of (d/dz)^N o D, indexed by I_rho.  dimension == m_rho.
struct MicroBasis {
  Rational rho;
  std::vector<LogSolution> entries;
  std::vector<std::pair<int, int>> index_set;  // I_rho as (ladder_id, k), 1-based ladder
  long multiplicity = 0;                       // m_rho
};

// Representative of the S_infinity quotient: a ladder solution at infinity
// together with its polynomial image D f (degree < N).
struct SInftyEntry {
  LogSolution sol;
  Poly d_image;
};

// Basis of local solutions of `a` at `point`, dim = order(a), computed by
// exact kernel linear algebra on the truncated grid and organized into
// log-ladders (deterministic order: exponent classes ascending, log depth
// ascending within each ladder).
std::vector<LogSolution> local_solution_basis(const DiffOp& a, const BasePoint& point,
                                              long trunc);

MicroBasis microsolution_basis(const DiffOp& d, const Rational& rho, long trunc);

// Basis of {f in N_inf : D f in C[z]_<N} modulo polynomial members;
// dim = delta.  Entries ordered most-singular-first (per ladder, top of the
// log ladder first) -- the same convention the I_rho selection uses.
std::vector<SInftyEntry> sinfty_basis(const DiffOp& d, long trunc);

// sum over rho in Sigma and infinity of (K(rho,j)+1) * t_j^rho over the full
// local ladders of (d/dz)^N o D; an integer for Fuchsian operators.
Rational fuchs_exponent_sum(const DiffOp& d, long trunc);

}  // namespace microlap::frobenius
