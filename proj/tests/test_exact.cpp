#include <cmath>

#include "doctest.h"
#include "microlap/linalg.hpp"
#include "microlap/logseries.hpp"
#include "microlap/pochhammer.hpp"
#include "microlap/poly.hpp"
#include "microlap/rational.hpp"
#include "testutil.hpp"

using namespace microlap::exact;
using testutil::rand_logseries;
using testutil::rand_rational;

TEST_CASE("rational canonical form and arithmetic") {
  Rational a(6, -4);
  CHECK(a == Rational(-3, 2));
  CHECK(a.den() == 2);
  CHECK(a.num() == -3);
  CHECK((a + Rational(1, 2)) == Rational(-1));
  CHECK(Rational(7, 3).floor_long() == 2);
  CHECK(Rational(-7, 3).floor_long() == -3);
  CHECK(Rational(-7, 3).frac() == Rational(2, 3));
  CHECK(Rational(5, 3).str() == "5/3");
  CHECK(Rational(-4, 2).str() == "-2");
}

TEST_CASE("poly shift, divmod, gcd, squarefree") {
  Poly p({1, 2, 1});  // (1+z)^2
  CHECK(p.shift(Rational(1)).coeff(0) == Rational(4));
  auto [q, r] = Poly::divmod(p, Poly({1, 1}));
  CHECK(r.is_zero());
  CHECK(q == Poly({1, 1}));
  CHECK(Poly::gcd(p, p.derivative()) == Poly({1, 1}));
  CHECK(p.squarefree_part() == Poly({1, 1}));
}

TEST_CASE("poly rational roots with multiplicity") {
  // z^2 (z - 1) (2z + 3)^2
  Poly p = Poly({0, 0, 1}) * Poly({-1, 1}) * Poly({3, 2}) * Poly({3, 2});
  auto [roots, cof] = p.rational_roots();
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].first == Rational(-3, 2));
  CHECK(roots[0].second == 2);
  CHECK(roots[1].first == Rational(0));
  CHECK(roots[1].second == 2);
  CHECK(roots[2].first == Rational(1));
  CHECK(roots[2].second == 1);
  CHECK(cof.degree() == 0);

  auto [roots2, cof2] = Poly({1, 0, 1}).rational_roots();  // z^2 + 1
  CHECK(roots2.empty());
  CHECK(cof2.degree() == 2);
}

TEST_CASE("pochhammer ratio jet: stated values") {
  // Empty Pochhammer product at alpha = -1 is constant 1.
  auto j1 = pochhammer_ratio_jet(Rational(-1), 2);
  CHECK(j1 == std::vector<Rational>{Rational(1), Rational(0), Rational(0)});

  // R_1(y) = (-y)(-y+1) = y^2 - y; value 0 and derivative 1 at y = 1.
  auto j2 = pochhammer_ratio_jet(Rational(1), 1);
  CHECK(j2 == std::vector<Rational>{Rational(0), Rational(1)});

  // R_0(y) = -y at 1/2.
  auto j3 = pochhammer_ratio_jet(Rational(1, 2), 0);
  CHECK(j3 == std::vector<Rational>{Rational(-1, 2)});
}

TEST_CASE("pochhammer ratio jet vs symbolic differentiation oracle (n >= 0)") {
  // Oracle: build R_n(y) as an explicit polynomial in y and differentiate
  // it symbolically, independent of the jet arithmetic.
  for (long num = 0; num <= 14; ++num) {
    Rational alpha(num, 3);  // floor >= 0 for num >= 0
    long n = alpha.floor_long();
    Poly r = Poly::constant(Rational(1));
    for (long i = 0; i <= n; ++i) r = r * Poly(std::vector<Rational>{Rational(i), Rational(-1)});
    auto jet = pochhammer_ratio_jet(alpha, 4);
    Poly d = r;
    for (int m = 0; m <= 4; ++m) {
      CHECK(jet[static_cast<size_t>(m)] == d.eval(alpha));
      d = d.derivative();
    }
  }
}

TEST_CASE("pochhammer ratio jet vs numeric gamma oracle") {
  auto gamma_ratio = [](double y) { return std::tgamma(1.0 - (y - std::floor(y))) / std::tgamma(-y); };
  for (Rational alpha : {Rational(1, 2), Rational(-3, 2), Rational(7, 3), Rational(-13, 4)}) {
    double want = gamma_ratio(alpha.to_double());
    double got = pochhammer_ratio_jet(alpha, 0)[0].to_double();
    CHECK(std::abs(want - got) < 1e-9 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("pochhammer kernel: value zero iff alpha in Z>=0") {
  for (long k = 0; k <= 6; ++k) CHECK(pochhammer_ratio_jet(Rational(k), 0)[0].is_zero());
  for (Rational a : {Rational(-1), Rational(-5), Rational(1, 2), Rational(-1, 2), Rational(7, 3)})
    CHECK(!pochhammer_ratio_jet(a, 0)[0].is_zero());
}

TEST_CASE("closed form (-1)^([y]+n+1) ({y})_([y]+n+1) for shifted ratios") {
  // Gamma(1-{y})/Gamma(-y-n) at y = alpha equals the closed form for all
  // n >= -[alpha]; exercised exactly for the spec's alpha set, n <= 50.
  for (Rational alpha : {Rational(0), Rational(1, 2), Rational(-1, 2), Rational(-1), Rational(7, 3)}) {
    long fl = alpha.floor_long();
    Rational fr = alpha.frac();
    for (long n = std::max<long>(-fl, 0); n <= 50; ++n) {
      Rational lhs = pochhammer_ratio_jet(alpha + Rational(n), 0)[0];
      // rhs = (-1)^(fl+n+1) * (fr)_(fl+n+1)
      long p = fl + n + 1;
      Rational poch(1);
      for (long i = 0; i < p; ++i) poch *= fr + Rational(i);
      Rational rhs = Rational(-1).pow(p) * poch;
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("hadamard star: identity, zero, absorption") {
  const long K = 16;
  auto base = BasePoint::finite(Rational(0));
  std::vector<Rational> ones(K, Rational(1));
  LogSeries all_ones = LogSeries::from_power_series(base, ones, K);

  std::vector<Rational> fc;
  for (long n = 0; n < K; ++n) fc.push_back(Rational(-1).pow(n + 1) * factorial(n));
  LogSeries f = LogSeries::from_power_series(base, fc, K);

  CHECK(LogSeries::equal_on_common(hadamard_star(all_ones, f), f));
  CHECK(hadamard_star(LogSeries::zero(base, K), f).is_zero());

  // Direct coefficient loop oracle.
  LogSeries p = hadamard_star(f, all_ones);
  for (long n = 0; n < K; ++n) CHECK(p.coeff(Rational(0), 0, n) == fc[static_cast<size_t>(n)]);
}

TEST_CASE("hadamard star rejects mixed terms") {
  const long K = 8;
  auto base = BasePoint::finite(Rational(0));
  LogSeries with_log = LogSeries::monomial(base, Rational(0), 1, 0, Rational(1), K);
  LogSeries plain = LogSeries::from_power_series(base, {Rational(1)}, K);
  CHECK_THROWS_AS(hadamard_star(with_log, plain), microlap::MixedTermsError);
  LogSeries frac = LogSeries::monomial(base, Rational(1, 2), 0, 0, Rational(1), K);
  CHECK_THROWS_AS(hadamard_star(frac, plain), microlap::MixedTermsError);
}

TEST_CASE("hadamard star is commutative, associative, bilinear") {
  auto base = BasePoint::finite(Rational(0));
  for (int iter = 0; iter < 50; ++iter) {
    LogSeries a = rand_logseries(base, {Rational(0)}, 0, 10);
    LogSeries b = rand_logseries(base, {Rational(0)}, 0, 10);
    LogSeries c = rand_logseries(base, {Rational(0)}, 0, 10);
    Rational s = rand_rational();
    CHECK(LogSeries::equal_on_common(hadamard_star(a, b), hadamard_star(b, a)));
    CHECK(LogSeries::equal_on_common(hadamard_star(hadamard_star(a, b), c),
                                     hadamard_star(a, hadamard_star(b, c))));
    CHECK(LogSeries::equal_on_common(hadamard_star(a + b * s, c),
                                     hadamard_star(a, c) + hadamard_star(b, c) * s));
  }
}

TEST_CASE("normalize merges classes,  drops zero rows, idempotent") {
  auto base = BasePoint::finite(Rational(0));
  const long K = 6;
  LogSeries s(base, K);
  s.add_term(Rational(1, 2), 0, 0, Rational(3));
  s.add_term(Rational(3, 2), 0, 0, Rational(7));  // same class, shifted by 1
  LogSeries n = s.normalized();
  REQUIRE(n.terms().size() == 1);
  CHECK(n.coeff(Rational(1, 2), 0, 0) == Rational(3));
  CHECK(n.coeff(Rational(1, 2), 0, 1) == Rational(7));

  LogSeries z(base, K);
  z.add_term(Rational(2, 3), 1, 2, Rational(0));
  CHECK(z.normalized().terms().empty());

  for (int iter = 0; iter < 1000; ++iter) {
    LogSeries r = rand_logseries(base, {Rational(0), Rational(1, 2), Rational(3, 2), Rational(-1)});
    LogSeries n1 = r.normalized();
    LogSeries n2 = n1.normalized();
    CHECK(n1.terms() == n2.terms());
  }
}

TEST_CASE("exact nullspace and solve") {
  RatMatrix m(2, 3);
  m.at(0, 0) = Rational(1);
  m.at(0, 1) = Rational(2);
  m.at(0, 2) = Rational(3);
  m.at(1, 0) = Rational(2);
  m.at(1, 1) = Rational(4);
  m.at(1, 2) = Rational(6);
  CHECK(m.rank() == 1);
  auto ns = m.nullspace();
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) {
    Rational dot(0);
    for (size_t j = 0; j < 3; ++j) dot += m.at(0, j) * v[j];
    CHECK(dot.is_zero());
  }

  RatMatrix a(2, 2);
  a.at(0, 0) = Rational(2);
  a.at(0, 1) = Rational(1);
  a.at(1, 0) = Rational(1);
  a.at(1, 1) = Rational(-1);
  auto x = a.solve({Rational(3), Rational(0)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rational(1));
  CHECK((*x)[1] == Rational(1));
}
