#include "microlap/laplace.hpp"

#include <algorithm>

#include "microlap/pochhammer.hpp"

namespace microlap::laplace {

using exact::binomial;
using exact::pochhammer_ratio_jet;

LogSeries lseul_monomial(const Rational& alpha, int j, long trunc) {
  LogSeries out(BasePoint::infinity(), trunc);
  const RatVec jets = pochhammer_ratio_jet(alpha, j);
  for (int k = 0; k <= j; ++k) {
    const Rational c = binomial(j, k) * jets[static_cast<size_t>(j - k)];
    if (!c.is_zero()) out.add_term(alpha, k, 0, c);
  }
  return out;
}

LogSeries lseul_preimage_monomial(const Rational& alpha, int k, long trunc) {
  // Target x^(-alpha-1) log(1/x)^k.  For alpha with jet_0(alpha) != 0 a
  // combination z^alpha * sum_(i<=k) a_i log^i z works; for alpha in Z>=0 the
  // degree drop forces log powers up to k+1 (and the z^alpha coefficient is
  // free; we set a_0 = 0 there).
  const bool drop = alpha.is_integer() && alpha.sign() >= 0;
  const int jmax = drop ? k + 1 : k;
  const RatVec jets = pochhammer_ratio_jet(alpha, jmax);

  // L(z^alpha log^j) has log(1/x)^i coefficient C(j,i) jet_(j-i).
  // Solve triangularly for a_jmax..a_0 so that sum_j a_j C(j,i) jet_(j-i)
  // equals [i == k].
  RatVec a(static_cast<size_t>(jmax) + 1, Rational(0));
  for (int i = jmax; i >= 0; --i) {
    if (drop && i == 0) break;  // a_0 unconstrained (kernel direction); leave 0
    Rational want = (i == k) ? Rational(1) : Rational(0);
    Rational acc(0);
    for (int j = i + 1; j <= jmax; ++j)
      acc += a[static_cast<size_t>(j)] * binomial(j, i) * jets[static_cast<size_t>(j - i)];
    // remaining term: a_i * C(i,i) * jet_0
    const Rational lead = jets[0];
    if (lead.is_zero()) {
      // alpha in Z>=0: the i-th output row is produced by a_(i+1) alone
      // (already accumulated); consistency requires acc == want.
      if (acc != want) throw std::logic_error("lseul_preimage_monomial: triangular solve failed");
      continue;
    }
    a[static_cast<size_t>(i)] = (want - acc) / lead;
  }
  LogSeries p(BasePoint::finite(Rational(0)), trunc);
  for (int j = 0; j <= jmax; ++j)
    if (!a[static_cast<size_t>(j)].is_zero()) p.add_term(alpha, j, 0, a[static_cast<size_t>(j)]);
  return p;
}

ExpLogSeries lrho_transform(const LogSeries& f) {
  if (!f.base().is_finite())
    throw std::invalid_argument("lrho_transform expects a series at a finite point");
  const LogSeries g = f.normalized();
  LogSeries body(BasePoint::infinity(), g.order());
  for (const auto& [key, v] : g.terms()) {
    for (long n = 0; n < static_cast<long>(v.size()); ++n) {
      const Rational& c = v[static_cast<size_t>(n)];
      if (c.is_zero()) continue;
      const RatVec jets = pochhammer_ratio_jet(key.alpha + Rational(n), key.log_pow);
      for (int k = 0; k <= key.log_pow; ++k) {
        const Rational w = c * binomial(key.log_pow, k) * jets[static_cast<size_t>(key.log_pow - k)];
        if (!w.is_zero()) body.add_term(key.alpha, k, n, w);
      }
    }
  }
  return ExpLogSeries(f.base().rho, body.normalized());
}

LogSeries linf_transform(const LogSeries& f) {
  if (f.base().is_finite())
    throw std::invalid_argument("linf_transform expects a series at infinity");
  const LogSeries g = f.normalized();
  LogSeries out(BasePoint::finite(Rational(0)), g.order());
  for (const auto& [key, v] : g.terms()) {
    const Rational sj = Rational(-1).pow(key.log_pow);
    for (long n = 0; n < static_cast<long>(v.size()); ++n) {
      const Rational& c = v[static_cast<size_t>(n)];
      if (c.is_zero()) continue;
      // L applied to z^(-n-alpha-1) (log z)^j; then log x = -log(1/x).
      const Rational inner = Rational(-n) - key.alpha - Rational(1);
      const RatVec jets = pochhammer_ratio_jet(inner, key.log_pow);
      for (int k = 0; k <= key.log_pow; ++k) {
        const Rational w = c * sj * Rational(-1).pow(k) * binomial(key.log_pow, k) *
                           jets[static_cast<size_t>(key.log_pow - k)];
        if (!w.is_zero()) out.add_term(key.alpha, k, n, w);
      }
    }
  }
  return out.normalized();
}

RatVec y_alpha_i_coeffs(const Rational& alpha, int i, long trunc) {
  RatVec c(static_cast<size_t>(trunc), Rational(0));
  Rational ifact = exact::factorial(i);
  for (long n = 0; n < trunc; ++n)
    c[static_cast<size_t>(n)] =
        pochhammer_ratio_jet(alpha + Rational(n), i)[static_cast<size_t>(i)] / ifact;
  return c;
}

LogSeries y_alpha_i_series(const Rational& alpha, int i, long trunc) {
  return LogSeries::from_power_series(BasePoint::finite(Rational(0)),
                                      y_alpha_i_coeffs(alpha, i, trunc), trunc);
}

namespace {

// Assemble e^(rho x) x^(-t-1) sum ae_(k-k')(1/x) log(1/x)^k'/k'! as a body series.
LogSeries assemble_from_ae(const Rational& t, const std::vector<RatVec>& ae, int k, long trunc) {
  LogSeries body(BasePoint::infinity(), trunc);
  Rational kfact(1);
  for (int kp = 0; kp <= k; ++kp) {
    if (kp > 0) kfact *= Rational(kp);
    const RatVec& comp = ae[static_cast<size_t>(k - kp)];
    const Rational inv = kfact.inv();
    for (long n = 0; n < static_cast<long>(comp.size()); ++n)
      if (!comp[static_cast<size_t>(n)].is_zero())
        body.add_term(t, kp, n, comp[static_cast<size_t>(n)] * inv);
  }
  return body;
}

}  // namespace

EInftyBasis einfty_basis(const DiffOp& d, long trunc) {
  const weyl::SingularityCensus census = d.finite_singularities();
  const long delta = d.degree();

  EInftyBasis basis;
  std::vector<std::pair<Rational, long>> gamma_blocks;  // (diag value t+1, block size)

  for (const auto& [rho, mult] : census.points) {
    const frobenius::MicroBasis micro = frobenius::microsolution_basis(d, rho, trunc);

    // Group the I_rho entries by ladder; each group is a consecutive top
    // segment k0..K of its ladder.
    for (size_t i = 0; i < micro.entries.size();) {
      size_t lo = i;
      const int lid = micro.entries[i].ladder_id;
      while (i < micro.entries.size() && micro.entries[i].ladder_id == lid) ++i;

      std::vector<EInftyEntry> segment;
      for (size_t e = lo; e < i; ++e) {
        const frobenius::LogSolution& sol = micro.entries[e];
        // Route A: direct monomial transform of the assembled solution.
        const ExpLogSeries route_a = lrho_transform(sol.assemble());

        // Route B: Hadamard form.  ae_m = sum_(m'<=m) y_(t,m') * g_(m-m').
        std::vector<RatVec> ae(static_cast<size_t>(sol.k) + 1);
        for (int m = 0; m <= sol.k; ++m) {
          RatVec acc(static_cast<size_t>(trunc), Rational(0));
          for (int mp = 0; mp <= m; ++mp) {
            const RatVec y = y_alpha_i_coeffs(sol.t, mp, trunc);
            const RatVec prod = exact::hadamard_star(y, sol.g[static_cast<size_t>(m - mp)]);
            for (size_t n = 0; n < prod.size(); ++n) acc[n] += prod[n];
          }
          ae[static_cast<size_t>(m)] = std::move(acc);
        }
        LogSeries route_b = assemble_from_ae(sol.t, ae, sol.k, trunc);
        if (!LogSeries::equal_on_common(route_a.body, route_b))
          throw std::logic_error("einfty_basis: monomial and Hadamard routes disagree");

        EInftyEntry entry;
        entry.rho = rho;
        entry.t = sol.t;
        entry.ladder_id = sol.ladder_id;
        entry.k = sol.k;
        entry.series = route_a;
        entry.ae = std::move(ae);
        segment.push_back(std::move(entry));
      }

      // ae components below the segment (holomorphic ladder positions) vanish.
      const int k0 = segment.front().k;
      for (const auto& e : segment)
        for (int m = 0; m < k0 && m < static_cast<int>(e.ae.size()); ++m)
          for (const auto& c : e.ae[static_cast<size_t>(m)])
            if (!c.is_zero())
              throw std::logic_error("einfty_basis: nonzero ae below the microsolution segment");

      // Residual check under the conjugated E-operator.
      const DiffOp fbar = d.fourier_laplace();
      const DiffOp conj = fbar.conjugate_by_exp(rho);
      for (const auto& e : segment)
        if (!conj.apply(e.series.body).normalized().is_zero())
          throw std::logic_error("einfty_basis: entry not annihilated by the E-operator");

      // Sign normalization at segment granularity (keeps the ladder coherent).
      bool flip = false;
      {
        LogSeries probe = segment.front().series.body.normalized();
        LogSeries copy = probe;
        flip = copy.sign_normalize();
      }
      if (flip)
        for (auto& e : segment) {
          e.series.body = -e.series.body;
          for (auto& comp : e.ae)
            for (auto& c : comp) c = -c;
          e.sign_flipped = true;
        }

      gamma_blocks.emplace_back(segment.front().t + Rational(1), static_cast<long>(segment.size()));
      for (auto& e : segment) basis.entries.push_back(std::move(e));
    }

    for (int c = 0; c < mult; ++c) basis.delta_diag.push_back(rho);
  }

  if (static_cast<long>(basis.entries.size()) != delta)
    throw DimensionMismatch("einfty basis entry count != delta");

  basis.gamma_inf = exact::RatMatrix(static_cast<size_t>(delta), static_cast<size_t>(delta));
  size_t pos = 0;
  for (const auto& [diag, size] : gamma_blocks) {
    for (long r = 0; r < size; ++r) {
      basis.gamma_inf.at(pos + r, pos + r) = diag;
      if (r + 1 < size) basis.gamma_inf.at(pos + r, pos + r + 1) = Rational(1);
    }
    pos += static_cast<size_t>(size);
  }
  return basis;
}

EZeroBasis ezero_basis(const DiffOp& d, long trunc) {
  const std::vector<frobenius::SInftyEntry> sinf = frobenius::sinfty_basis(d, trunc);
  const DiffOp fbar = d.fourier_laplace();

  EZeroBasis basis;
  for (const auto& se : sinf) {
    EZeroEntry e;
    e.series = linf_transform(se.sol.assemble());
    e.s = se.sol.t - Rational(1);
    e.ladder_id = se.sol.ladder_id;
    e.k = se.sol.k;
    if (e.series.is_zero())
      throw DimensionMismatch("ezero_basis: polynomial representative produced a zero entry");
    if (!fbar.apply(e.series).normalized().is_zero())
      throw std::logic_error("ezero_basis: entry not annihilated by the E-operator");
    basis.entries.push_back(std::move(e));
  }

  // Segment-coherent sign normalization (entries of one source ladder flip
  // together, decided by the ladder top, which comes first).
  for (size_t i = 0; i < basis.entries.size();) {
    size_t lo = i;
    const int lid = basis.entries[i].ladder_id;
    while (i < basis.entries.size() && basis.entries[i].ladder_id == lid) ++i;
    LogSeries probe = basis.entries[lo].series.normalized();
    if (probe.sign_normalize())
      for (size_t e = lo; e < i; ++e) {
        basis.entries[e].series = -basis.entries[e].series;
        basis.entries[e].sign_flipped = true;
      }
  }

  // Gamma_0 block data in ascending-k order per ladder.
  const size_t n = basis.entries.size();
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& ea = basis.entries[a];
    const auto& eb = basis.entries[b];
    if (ea.ladder_id != eb.ladder_id) return ea.ladder_id < eb.ladder_id;
    return ea.k < eb.k;
  });
  basis.gamma_order = order;
  basis.gamma_zero = exact::RatMatrix(n, n);
  for (size_t r = 0; r < n; ++r) {
    basis.gamma_zero.at(r, r) = basis.entries[order[r]].s;
    if (r + 1 < n && basis.entries[order[r]].ladder_id == basis.entries[order[r + 1]].ladder_id)
      basis.gamma_zero.at(r, r + 1) = Rational(1);
  }
  return basis;
}

}  // namespace microlap::laplace
