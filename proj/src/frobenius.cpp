#include "microlap/frobenius.hpp"

#include <algorithm>
#include <map>

#include "microlap/linalg.hpp"

namespace microlap::frobenius {

LogSeries LogSolution::assemble() const {
  LogSeries s(base, trunc);
  // Row alpha for the grid: u-exponent t at a finite point; at infinity the
  // monomial z^(-n-alpha-1) = (1/z)^(n+alpha+1) so alpha = t - 1.
  const Rational alpha = base.is_finite() ? t : t - Rational(1);
  Rational kfact(1);
  for (int kp = 0; kp <= k; ++kp) {
    if (kp > 0) kfact *= Rational(kp);
    const RatVec& comp = g[static_cast<size_t>(k - kp)];
    const Rational inv = kfact.inv();
    for (long n = 0; n < static_cast<long>(comp.size()); ++n)
      if (!comp[static_cast<size_t>(n)].is_zero())
        s.add_term(alpha, kp, n, comp[static_cast<size_t>(n)] * inv);
  }
  return s;
}

bool LogSolution::holomorphic() const {
  return assemble().normalized().is_holomorphic();
}

namespace {

struct ClassProblem {
  Rational alpha_min;   // class representative exponent of the unknown grid
  long expected_dim;    // sum of indicial-root multiplicities in the class
};

// Indicial roots grouped into classes mod Z.  At a finite point the grid
// exponent equals the root t; at infinity the grid key is alpha = -r-1 for
// each root r of R (z-exponent of the leading monomial is -alpha-1 = r).
std::vector<ClassProblem> exponent_classes(const DiffOp& a, const BasePoint& point) {
  Poly ind;
  if (point.is_finite()) {
    ind = a.indicial_at(point.rho);
  } else {
    if (!a.regular_at_infinity())
      throw NotRegularSingular("operator is irregular at infinity");
    ind = a.indicial_at_infinity();
  }
  auto [roots, cofactor] = ind.rational_roots();
  if (cofactor.degree() >= 1)
    throw IrrationalExponent("indicial polynomial has non-rational roots: " +
                             cofactor.str("t"));
  std::map<Rational, ClassProblem> classes;  // keyed by frac
  for (const auto& [root, mult] : roots) {
    const Rational alpha = point.is_finite() ? root : -root - Rational(1);
    auto it = classes.find(alpha.frac());
    if (it == classes.end()) {
      classes[alpha.frac()] = ClassProblem{alpha, mult};
    } else {
      it->second.alpha_min = std::min(it->second.alpha_min, alpha);
      it->second.expected_dim += mult;
    }
  }
  std::vector<ClassProblem> out;
  for (auto& [fr, cp] : classes) out.push_back(cp);
  return out;
}

long max_root_gap(const DiffOp& a, const BasePoint& point) {
  Poly ind = point.is_finite() ? a.indicial_at(point.rho) : a.indicial_at_infinity();
  auto [roots, cof] = ind.rational_roots();
  (void)cof;
  long gap = 0;
  for (const auto& [r1, m1] : roots)
    for (const auto& [r2, m2] : roots) {
      Rational d = r1 - r2;
      if (d.is_integer()) gap = std::max(gap, std::abs(d.floor_long()));
    }
  return gap;
}

// Grid coordinates (log_pow j, index n) -> flat column.
struct Grid {
  long jmax, kwork;
  size_t cols() const { return static_cast<size_t>(jmax * kwork); }
  size_t col(long j, long n) const { return static_cast<size_t>(n * jmax + j); }
};

// Solve for the kernel of `a` on the truncated class grid.  Returns kernel
// vectors in grid coordinates.
std::vector<RatVec> class_kernel(const DiffOp& a, const BasePoint& point,
                                 const Rational& alpha_min, const Grid& grid) {
  const long t_big = grid.kwork + a.order() + std::max<long>(a.degree(), 0) + 8;

  // Exact image of every unknown monomial.
  std::vector<LogSeries> images;
  images.reserve(grid.cols());
  for (long n = 0; n < grid.kwork; ++n)
    for (long j = 0; j < grid.jmax; ++j)
      images.push_back(
          a.apply(LogSeries::monomial(point, alpha_min, static_cast<int>(j), n, Rational(1), t_big))
              .normalized());
  // note: images indexed by col(j, n) = n*jmax + j, matching the push order

  // Common output representative.
  bool any = false;
  Rational alpha_out(0);
  for (const auto& img : images)
    for (const auto& [key, v] : img.terms()) {
      if (!any || key.alpha < alpha_out) alpha_out = key.alpha;
      any = true;
    }
  if (!any) {
    // a == 0 on the whole grid; everything is a solution (not expected).
    return exact::RatMatrix(1, grid.cols()).nullspace();
  }

  // Output row budget: equations m < kwork + s_lo with
  // s_lo = min over unknowns of (first output index - n).
  long s_lo = t_big;
  long max_j_out = 0;
  for (long n = 0; n < grid.kwork; ++n)
    for (long j = 0; j < grid.jmax; ++j) {
      const auto& img = images[grid.col(j, n)];
      for (const auto& [key, v] : img.terms()) {
        const long shift = (key.alpha - alpha_out).floor_long();
        max_j_out = std::max<long>(max_j_out, key.log_pow);
        for (long i = 0; i < static_cast<long>(v.size()); ++i)
          if (!v[static_cast<size_t>(i)].is_zero()) {
            s_lo = std::min(s_lo, shift + i - n);
            break;
          }
      }
    }
  const long m_eq = grid.kwork + s_lo;
  // all images known through t_big; the equation window must stay inside it
  if (m_eq > t_big)
    throw std::logic_error("class_kernel: equation window exceeds image knowledge");

  exact::RatMatrix mat(static_cast<size_t>((max_j_out + 1) * m_eq), grid.cols());
  for (long n = 0; n < grid.kwork; ++n)
    for (long j = 0; j < grid.jmax; ++j) {
      const auto& img = images[grid.col(j, n)];
      for (const auto& [key, v] : img.terms()) {
        const long shift = (key.alpha - alpha_out).floor_long();
        for (long i = 0; i < static_cast<long>(v.size()); ++i) {
          const long m = shift + i;
          if (m < 0 || m >= m_eq) continue;
          if (v[static_cast<size_t>(i)].is_zero()) continue;
          mat.at(static_cast<size_t>(key.log_pow * m_eq + m), grid.col(j, n)) +=
              v[static_cast<size_t>(i)];
        }
      }
    }
  return mat.nullspace();
}

// --- exact nilpotent Jordan chains ------------------------------------------

// Rank of a set of row vectors.
size_t rank_of(const std::vector<RatVec>& rows, size_t dim) {
  if (rows.empty()) return 0;
  exact::RatMatrix m(rows.size(), dim);
  for (size_t i = 0; i < rows.size(); ++i) m.row(i) = rows[i];
  return m.rank();
}

// Jordan chains of the nilpotent grid operator T = d/d(log u) restricted to
// V = span(basis).  Works in V-coordinates (T preserves V), then maps the
// chains back to grid vectors, top-first (top, T top, ...).
std::vector<std::vector<RatVec>> jordan_chains(const std::vector<RatVec>& basis,
                                               const Grid& grid) {
  const size_t q = basis.size();
  std::vector<std::vector<RatVec>> chains;
  if (q == 0) return chains;
  const size_t dim = grid.cols();

  auto apply_T_grid = [&grid](const RatVec& v) {
    RatVec w(v.size(), Rational(0));
    for (long n = 0; n < grid.kwork; ++n)
      for (long j = 0; j + 1 < grid.jmax; ++j)
        w[grid.col(j, n)] = v[grid.col(j + 1, n)] * Rational(j + 1);
    return w;
  };

  // Matrix of T in V-coordinates: solve basis * x = T(b_j) column by column.
  exact::RatMatrix bmat(dim, q);
  for (size_t j = 0; j < q; ++j)
    for (size_t i = 0; i < dim; ++i) bmat.at(i, j) = basis[j][i];
  exact::RatMatrix tmat(q, q);
  for (size_t j = 0; j < q; ++j) {
    auto x = bmat.solve(apply_T_grid(basis[j]));
    if (!x) throw std::logic_error("jordan_chains: T does not preserve the kernel");
    for (size_t i = 0; i < q; ++i) tmat.at(i, j) = (*x)[i];
  }

  auto mat_apply = [&](const exact::RatMatrix& m, const RatVec& v) {
    RatVec w(q, Rational(0));
    for (size_t i = 0; i < q; ++i)
      for (size_t j = 0; j < q; ++j) w[i] += m.at(i, j) * v[j];
    return w;
  };

  // Kernel filtration ker T^1 subset ... subset ker T^h = V.
  std::vector<std::vector<RatVec>> ker_pow;  // ker_pow[i] = basis of ker T^(i+1) in V-coords
  exact::RatMatrix power = tmat;
  while (true) {
    std::vector<RatVec> kb = power.nullspace();
    ker_pow.push_back(kb);
    if (kb.size() == q) break;
    // power = tmat * power
    exact::RatMatrix nxt(q, q);
    for (size_t i = 0; i < q; ++i)
      for (size_t j = 0; j < q; ++j) {
        Rational acc(0);
        for (size_t l = 0; l < q; ++l) acc += tmat.at(i, l) * power.at(l, j);
        nxt.at(i, j) = acc;
      }
    power = nxt;
  }
  const size_t h = ker_pow.size();

  // Top-down construction: at height i, a new chain top must be independent
  // of ker T^(i-1) together with the height-i members of taller chains.
  struct ChainTop {
    RatVec top;
    size_t height;
  };
  std::vector<ChainTop> tops;
  for (size_t i = h; i >= 1; --i) {
    std::vector<RatVec> span;
    if (i >= 2) span = ker_pow[i - 2];
    for (const auto& c : tops) {
      RatVec member = c.top;  // descend to height i
      for (size_t s = 0; s < c.height - i; ++s) member = mat_apply(tmat, member);
      span.push_back(std::move(member));
    }
    size_t base_rank = rank_of(span, q);
    for (const auto& cand : ker_pow[i - 1]) {
      std::vector<RatVec> trial = span;
      trial.push_back(cand);
      if (rank_of(trial, q) == base_rank + 1) {
        span = std::move(trial);
        ++base_rank;
        tops.push_back({cand, i});
      }
    }
    if (i == 1) break;
  }

  // Expand tops into chains and map back to grid vectors.
  for (const auto& c : tops) {
    std::vector<RatVec> chain_v{c.top};
    for (size_t s = 1; s < c.height; ++s) chain_v.push_back(mat_apply(tmat, chain_v.back()));
    std::vector<RatVec> g;
    for (const auto& cv : chain_v) {
      RatVec w(dim, Rational(0));
      for (size_t j = 0; j < q; ++j) {
        if (cv[j].is_zero()) continue;
        for (size_t i = 0; i < dim; ++i) w[i] += basis[j][i] * cv[j];
      }
      g.push_back(std::move(w));
    }
    chains.push_back(std::move(g));
  }
  return chains;
}

struct Ladder {
  Rational t;
  std::vector<RatVec> g;  // g_0..g_K, trimmed to the requested truncation
};

// Convert a chain (top-first) into paper-form ladder data g_i = (L-1-i)! h_(L-1-i)
// with the exponent refined by the common leading order of the g's.
Ladder chain_to_ladder(const std::vector<RatVec>& chain, const Grid& grid,
                       const Rational& alpha_min, long trunc) {
  const RatVec& top = chain.front();
  const long len = static_cast<long>(chain.size());
  std::vector<RatVec> h(static_cast<size_t>(len), RatVec(static_cast<size_t>(grid.kwork), Rational(0)));
  for (long j = 0; j < len && j < grid.jmax; ++j)
    for (long n = 0; n < grid.kwork; ++n) h[static_cast<size_t>(j)][static_cast<size_t>(n)] = top[grid.col(j, n)];

  Ladder lad;
  lad.g.resize(static_cast<size_t>(len));
  // g_i = (len-1-i)! * h_(len-1-i)
  for (long i = 0; i < len; ++i) {
    const long src = len - 1 - i;
    Rational f = exact::factorial(src);
    RatVec gi = h[static_cast<size_t>(src)];
    for (auto& x : gi) x *= f;
    lad.g[static_cast<size_t>(i)] = std::move(gi);
  }

  // Common leading order d across the g's; refine t = alpha_min + d.
  long d = grid.kwork;
  for (const auto& gi : lad.g)
    for (long n = 0; n < static_cast<long>(gi.size()); ++n)
      if (!gi[static_cast<size_t>(n)].is_zero()) {
        d = std::min(d, n);
        break;
      }
  if (d == grid.kwork) d = 0;  // all-zero ladder (cannot happen for a chain)
  lad.t = alpha_min + Rational(d);
  for (auto& gi : lad.g) {
    gi.erase(gi.begin(), gi.begin() + d);
    if (static_cast<long>(gi.size()) < trunc)
      throw std::logic_error("chain_to_ladder: working order too small");
    gi.resize(static_cast<size_t>(trunc));
  }

  // Unit leading coefficient: scale by the inverse of the first nonzero
  // coefficient of g_0 (the log-free bottom of the ladder).
  for (const auto& x : lad.g[0]) {
    if (x.is_zero()) continue;
    Rational inv = x.inv();
    for (auto& gi : lad.g)
      for (auto& y : gi) y *= inv;
    break;
  }
  return lad;
}

}  // namespace

std::vector<LogSolution> local_solution_basis(const DiffOp& a, const BasePoint& point,
                                              long trunc) {
  if (a.is_zero() || a.order() < 1)
    throw NotRegularSingular("operator of order < 1 has no solution basis");
  const std::vector<ClassProblem> classes = exponent_classes(a, point);
  const long maxgap = max_root_gap(a, point);

  long kwork = trunc + maxgap + a.order() + 16;
  const int kMaxRetry = 4;
  for (int attempt = 0;; ++attempt) {
    std::vector<LogSolution> out;
    int ladder_id = 0;
    bool ok = true;
    long total = 0;
    for (const auto& cls : classes) {
      Grid grid{a.order(), kwork};
      std::vector<RatVec> kernel = class_kernel(a, point, cls.alpha_min, grid);
      if (static_cast<long>(kernel.size()) != cls.expected_dim) {
        ok = false;
        break;
      }
      auto chains = jordan_chains(kernel, grid);
      // Deterministic ladder order: by refined exponent, then chain length.
      std::vector<Ladder> ladders;
      for (const auto& ch : chains)
        ladders.push_back(chain_to_ladder(ch, grid, cls.alpha_min, trunc));
      std::vector<size_t> order_idx(ladders.size());
      for (size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = i;
      std::sort(order_idx.begin(), order_idx.end(), [&](size_t x, size_t y) {
        if (ladders[x].t != ladders[y].t) return ladders[x].t < ladders[y].t;
        return ladders[x].g.size() < ladders[y].g.size();
      });
      for (size_t oi : order_idx) {
        const Ladder& lad = ladders[oi];
        ++ladder_id;
        for (int k = 0; k < static_cast<int>(lad.g.size()); ++k) {
          LogSolution sol;
          sol.base = point;
          // stored exponent: u-exponent at finite points, 1/z-exponent at inf
          sol.t = point.is_finite() ? lad.t : lad.t + Rational(1);
          sol.g.assign(lad.g.begin(), lad.g.begin() + k + 1);
          sol.ladder_id = ladder_id;
          sol.k = k;
          sol.trunc = trunc;
          out.push_back(std::move(sol));
          ++total;
        }
      }
    }
    if (ok && total == a.order()) return out;
    if (attempt >= kMaxRetry)
      throw TruncationExhausted("local basis dimension still deficient after retries");
    kwork *= 2;
  }
}

MicroBasis microsolution_basis(const DiffOp& d, const Rational& rho, long trunc) {
  const weyl::SingularityCensus census = d.finite_singularities();
  const int m_rho = census.multiplicity_of(rho);
  if (m_rho == 0)
    throw NotRegularSingular(rho.str() + " is an ordinary point of the operator");
  const auto [m, n] = d.mn_bounds();
  const DiffOp a = DiffOp::d_dz(d.var()).pow(n) * d;

  MicroBasis mb;
  mb.rho = rho;
  mb.multiplicity = m_rho;
  for (const auto& sol : local_solution_basis(a, BasePoint::finite(rho), trunc)) {
    if (sol.holomorphic()) continue;
    mb.index_set.emplace_back(sol.ladder_id, sol.k);
    mb.entries.push_back(sol);
  }
  if (static_cast<long>(mb.entries.size()) != m_rho)
    throw DimensionMismatch("microsolution count " + std::to_string(mb.entries.size()) +
                            " != multiplicity " + std::to_string(m_rho) + " at rho = " +
                            rho.str());
  return mb;
}

std::vector<SInftyEntry> sinfty_basis(const DiffOp& d, long trunc) {
  const auto [m, n_bound] = d.mn_bounds();
  const long delta = d.degree();
  const DiffOp a = DiffOp::d_dz(d.var()).pow(n_bound) * d;
  std::vector<LogSolution> all = local_solution_basis(a, BasePoint::infinity(), trunc);

  // Reorder most-singular-first within each ladder (descending k).
  std::stable_sort(all.begin(), all.end(), [](const LogSolution& x, const LogSolution& y) {
    if (x.ladder_id != y.ladder_id) return x.ladder_id < y.ladder_id;
    return x.k > y.k;
  });

  // Quotient by the polynomial members (exactly C[z]_<M): zero out the
  // coordinates of z^0..z^(M-1) and keep entries that extend the rank of
  // what is left.
  // Collect the coordinate positions of every entry's assembled series.
  std::vector<LogSeries> assembled;
  assembled.reserve(all.size());
  for (const auto& s : all) assembled.push_back(s.assemble().normalized());

  std::map<std::pair<std::pair<Rational, int>, long>, size_t> coord_index;
  for (const auto& s : assembled)
    for (const auto& [key, v] : s.terms())
      for (long i = 0; i < static_cast<long>(v.size()); ++i) {
        auto ck = std::make_pair(std::make_pair(key.alpha, key.log_pow), i);
        if (!coord_index.count(ck)) {
          size_t next = coord_index.size();
          coord_index[ck] = next;
        }
      }

  auto to_vec = [&](const LogSeries& s) {
    RatVec v(coord_index.size(), Rational(0));
    for (const auto& [key, row] : s.terms())
      for (long i = 0; i < static_cast<long>(row.size()); ++i) {
        // z-exponent of this monomial; drop polynomial coordinates < M
        Rational zexp = Rational(-i) - key.alpha - Rational(1);
        if (key.log_pow == 0 && zexp.is_integer() && zexp >= Rational(0) && zexp < Rational(m))
          continue;
        v[coord_index.at({{key.alpha, key.log_pow}, i})] = row[static_cast<size_t>(i)];
      }
    return v;
  };

  std::vector<SInftyEntry> out;
  std::vector<RatVec> picked_rows;
  for (size_t i = 0; i < all.size(); ++i) {
    RatVec v = to_vec(assembled[i]);
    std::vector<RatVec> trial = picked_rows;
    trial.push_back(v);
    if (rank_of(trial, coord_index.size()) != picked_rows.size() + 1) continue;
    picked_rows = std::move(trial);

    SInftyEntry e;
    e.sol = all[i];
    // Polynomial image D f, degree < N; everything else must vanish.
    LogSeries img = d.apply(assembled[i]).normalized();
    std::vector<Rational> pc(static_cast<size_t>(std::max<long>(n_bound, 0)), Rational(0));
    for (const auto& [key, row] : img.terms())
      for (long idx = 0; idx < static_cast<long>(row.size()); ++idx) {
        if (row[static_cast<size_t>(idx)].is_zero()) continue;
        Rational zexp = Rational(-idx) - key.alpha - Rational(1);
        bool poly_pos = key.log_pow == 0 && zexp.is_integer() && zexp >= Rational(0) &&
                        zexp < Rational(n_bound);
        if (!poly_pos)
          throw DimensionMismatch("S_infinity representative image is not in C[z]_<N");
        pc[static_cast<size_t>(zexp.floor_long())] = row[static_cast<size_t>(idx)];
      }
    e.d_image = Poly(std::move(pc));
    out.push_back(std::move(e));
  }
  if (static_cast<long>(out.size()) != delta)
    throw DimensionMismatch("S_infinity dimension " + std::to_string(out.size()) +
                            " != delta = " + std::to_string(delta));
  return out;
}

Rational fuchs_exponent_sum(const DiffOp& d, long trunc) {
  const auto [m, n_bound] = d.mn_bounds();
  const DiffOp a = DiffOp::d_dz(d.var()).pow(n_bound) * d;
  Rational sum(0);
  auto tally = [&sum](const std::vector<LogSolution>& basis) {
    // one contribution (K_j + 1) * t_j per ladder = one t per entry
    for (const auto& s : basis) sum += s.t;
  };
  for (const auto& [rho, mult] : d.finite_singularities().points)
    tally(local_solution_basis(a, BasePoint::finite(rho), trunc));
  tally(local_solution_basis(a, BasePoint::infinity(), trunc));
  return sum;
}

}  // namespace microlap::frobenius
