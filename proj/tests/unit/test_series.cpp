#include <doctest.h>

#include "oracles.hpp"
#include "padicsr/cover.hpp"
#include "padicsr/series.hpp"

using namespace psr;

namespace {

// Naive coefficients of c (d + e t)^a (d + e t - 1)^b, c = d^-a (d - 1)^-b.
std::vector<oracle::Q> naive(long a, long b, const oracle::Q& d, const oracle::Q& e) {
  auto f = oracle::poly_mul(oracle::linear_power(d, e, a), oracle::linear_power(d - 1, e, b));
  oracle::Q c = 1;
  for (long i = 0; i < a; ++i) c /= d;
  for (long i = 0; i < b; ++i) c /= (d - 1);
  for (auto& x : f) x = oracle::canon(x * c);
  return f;
}

}  // namespace

TEST_CASE("disk expansion matches multiplying out") {
  struct Case {
    long p, n, a, b;
    Rat d, e;
  };
  const std::vector<Case> cases{{5, 1, 1, 1, frac(1, 2), Rat(5)},  {5, 2, 2, 5, frac(2, 7), Rat(25)},
                                {7, 2, 3, 7, frac(3, 10), Rat(7)}, {3, 2, 1, 3, frac(1, 4), Rat(9)},
                                {2, 2, 1, 2, frac(1, 3), Rat(4)},  {11, 1, 4, 3, frac(4, 7), Rat(11)}};
  for (const auto& c : cases) {
    auto spec = branch_signature(c.p, c.n, c.a, c.b);
    auto base = Tower::base(c.p);
    const long L = std::max(c.a + c.b + 2, c.p + 1);
    auto exp = expand_disk(spec, base->rational(c.d), base->rational(c.e), L);
    auto ref = naive(c.a, c.b, oracle::Q(c.d), oracle::Q(c.e));
    for (long l = 0; l <= L; ++l) {
      oracle::Q want = l < static_cast<long>(ref.size()) ? ref[l] : oracle::Q(0);
      auto got = exp.coeff(l).as_rational();
      REQUIRE(got);
      CHECK_MESSAGE(*got == want, "p=" << c.p << " l=" << l);
      auto v = exp.coeff_valuation(l);
      if (want == 0) CHECK_FALSE(v);
      else CHECK(*v == oracle::vp(want, c.p));
    }
  }
}

TEST_CASE("symbolic scale gives the same valuations as a concrete one") {
  auto spec = branch_signature(5, 2, 2, 5);
  auto base = Tower::base(5);
  auto d = base->rational(frac(2, 7));
  auto concrete = expand_disk(spec, d, base->rational(Rat(125)), 10);
  auto symbolic = expand_disk(spec, d, RatVal(3), 10);
  for (long l = 0; l <= 10; ++l) CHECK(concrete.coeff_valuation(l) == symbolic.coeff_valuation(l));
}

TEST_CASE("worked valuations on the new-tail disk") {
  // p = 5, n = s = 1, a = b = 1, d = 1/2, v(e) = 5/8: c_1 = 0, c_2 = 8 e^2.
  auto base = Tower::base(5);
  auto one = expand_disk(branch_signature(5, 1, 1, 1), base->rational(frac(1, 2)), RatVal(5, 8));
  CHECK_FALSE(one.coeff_valuation(1));
  CHECK(*one.coeff_valuation(2) == Rat(5, 4));
  CHECK(classify_torsor_reduction(one).conductor == 2);
  // p = 5, n = 2, s = 1, a = 3, b = 10, l = 3:
  // v(c_3) = 3 v(e) + v(b) - v(3) - 3 (n - s) with v(e) = (2n - s + 1/4)/2.
  auto spec = branch_signature(5, 2, 3, 10);
  RatVal ve = (Rat(3) + Rat(1, 4)) / 2;
  auto two = expand_disk(spec, base->rational(frac(3, 13)), ve);
  CHECK(*two.coeff_valuation(3) == ve * 3 + 1 - 0 - 3);
  CHECK(*two.coeff_valuation(3) == Rat(23, 8));
}

TEST_CASE("expansion refuses a center on the branch locus") {
  auto spec = branch_signature(5, 1, 1, 1);
  auto base = Tower::base(5);
  CHECK_THROWS_AS(expand_disk(spec, base->rational(0), RatVal(1)), Error);
  CHECK_THROWS_AS(expand_disk(spec, base->rational(1), RatVal(1)), Error);
}

TEST_CASE("classifier on hand-made Artin-Schreier data") {
  // Over Q_5(pi), pi^4 = 5: a lone c_2 of valuation n + 1/(p-1) = 5/4 is
  // condition (i) with conductor 2.
  auto t = Tower::adjoin(Tower::base(5), "pi", 4, Tower::base(5)->rational(5));
  auto pi = t->generator("pi");
  std::vector<TowerElement> coeffs(7, t->zero());
  coeffs[0] = t->one();
  coeffs[2] = pi * Rat(5);
  auto v = classify_torsor_reduction(expansion_from_coefficients(5, 1, coeffs));
  CHECK(v.kind == VerdictKind::SplitsArtinSchreier);
  CHECK(v.condition == "(i)");
  CHECK(v.conductor == 2);
  CHECK(v.count == 1);

  // The same minimum at an index divisible by p is not condition (i).
  coeffs[5] = pi * Rat(5);
  auto w = classify_torsor_reduction(expansion_from_coefficients(5, 1, coeffs));
  CHECK(w.condition != "(i)");

  coeffs[0] = t->rational(2);
  CHECK_THROWS_AS(classify_torsor_reduction(expansion_from_coefficients(5, 1, coeffs)), Error);
}

TEST_CASE("binomial root series valuations") {
  // (1 + b w)^(1/p^(n-1)): the k-th term is C(1/p^(n-1), k) b^k.
  for (long p : {3L, 5L, 7L}) {
    for (long n : {2L, 3L}) {
      RatVal vb = Rat(n) + frac(1, 2);
      auto r = binomial_root_series(vb, p, n, 6);
      Rat alpha(1, 1);
      for (long i = 1; i < n; ++i) alpha /= p;
      CHECK(r.leading_valuation == vb - Rat(n - 1));
      for (long k = 2; k < 2 + static_cast<long>(r.term_valuations.size()); ++k) {
        Rat want = Rat(vp(binomial(alpha, k), p)) + vb * k;
        CHECK(r.term_valuations[k - 2] == want);
      }
    }
  }
  CHECK_THROWS_AS(binomial_root_series(RatVal(1), 5, 2), Error);
}
