#pragma once

#include <random>
#include <vector>

#include "microlap/diffop.hpp"
#include "microlap/logseries.hpp"
#include "microlap/rational.hpp"

namespace testutil {

using microlap::exact::BasePoint;
using microlap::exact::LogSeries;
using microlap::exact::Poly;
using microlap::exact::Rational;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed1234abcdULL);
  return gen;
}

inline long rand_int(long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  return d(rng());
}

inline Rational rand_rational(long max_num = 9, long max_den = 9) {
  long num = rand_int(-max_num, max_num);
  long den = rand_int(1, max_den);
  return Rational(num, den);
}

inline Poly rand_poly(long max_deg = 3, long max_coeff = 5) {
  std::vector<Rational> c;
  long deg = rand_int(0, max_deg);
  for (long i = 0; i <= deg; ++i) c.push_back(Rational(rand_int(-max_coeff, max_coeff)));
  return Poly(std::move(c));
}

inline microlap::weyl::DiffOp rand_diffop(long max_order = 2, long max_deg = 2) {
  long mu = rand_int(0, max_order);
  std::vector<Poly> c;
  for (long j = 0; j <= mu; ++j) c.push_back(rand_poly(max_deg));
  microlap::weyl::DiffOp d(std::move(c));
  if (d.is_zero()) return microlap::weyl::DiffOp::z();
  return d;
}

// Random truncated expansion with exponents drawn from the classes of
// `alphas`, log powers <= max_log.
inline LogSeries rand_logseries(BasePoint base, const std::vector<Rational>& alphas,
                                int max_log = 2, long trunc = 12) {
  LogSeries s(base, trunc);
  int rows = static_cast<int>(rand_int(1, 3));
  for (int r = 0; r < rows; ++r) {
    Rational alpha = alphas[static_cast<size_t>(rand_int(0, static_cast<long>(alphas.size()) - 1))];
    int j = static_cast<int>(rand_int(0, max_log));
    for (long n = 0; n < trunc; ++n) s.add_term(alpha, j, n, rand_rational(4, 3));
  }
  return s;
}

}  // namespace testutil
