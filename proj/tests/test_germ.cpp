#include "schurtile/germ.hpp"

#include "schurtile/measures.hpp"
#include "schurtile/rat.hpp"
#include "schurtile/rng.hpp"

#include <vector>

#include "doctest.h"

using namespace schurtile;

namespace {

Rat rand_rat(PhiloxRng& rng) {
  const long num = static_cast<long>(rng.below(11)) - 5;
  const long den = 1 + static_cast<long>(rng.below(6));
  return frac(num, den);
}

GermData random_germ(PhiloxRng& rng, int channels, int K) {
  GermData g = GermData::zero(channels, K);
  for (int i = 0; i < channels; ++i)
    for (int a = 0; a < K; ++a) g.c[i][a] = rand_rat(rng);
  for (int i = 0; i < channels; ++i)
    for (int j = 0; j < channels; ++j)
      for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b) {
          if (j < i || (j == i && b < a)) continue;
          const Rat v = rand_rat(rng);
          g.d[i][j][a][b] = v;
          g.d[j][i][b][a] = v;
        }
  g.validate();
  return g;
}

// The germ of the deterministic shift family: lambda = (s*N, ..., s*N) has
// c_a = s * (-1)^{a-1} (a-1)! and no fluctuations.
GermData shift_germ(long s, int K) {
  GermData g = GermData::zero(1, K);
  for (int a = 1; a <= K; ++a)
    g.c[0][a - 1] = Rat(s) * Rat(factorial(a - 1)) * ((a % 2) ? 1 : -1);
  return g;
}

}  // namespace

TEST_CASE("zero germ gives the uniform-density moments") {
  GermData g = GermData::zero(1);
  for (int k = 0; k <= 6; ++k)
    CHECK(forward_lln(g, 0, k) == frac(1, k + 1));
  for (int k = 1; k <= 4; ++k)
    for (int m = 1; m <= 4; ++m)
      CHECK(forward_cov(g, 0, k, 0, m) == Rat(0));
}

TEST_CASE("shift family: deterministic LLN, vanishing covariance") {
  GermData g = shift_germ(1, 8);
  CHECK(forward_lln(g, 0, 1) == frac(3, 2));
  // limit density is uniform on [s, s+1]
  for (long s : {1L, 2L}) {
    GermData gs = shift_germ(s, 8);
    for (int k = 0; k <= 5; ++k) {
      const Rat expect =
          (rat_pow(Rat(s + 1), k + 1) - rat_pow(Rat(s), k + 1)) / Rat(k + 1);
      CHECK(forward_lln(gs, 0, k) == expect);
    }
    for (int k = 1; k <= 4; ++k)
      for (int m = 1; m <= 4; ++m)
        CHECK(forward_cov(gs, 0, k, 0, m) == Rat(0));
  }
}

TEST_CASE("a lone d11 passes straight through to cov(1,1)") {
  GermData g = GermData::zero(1);
  g.d[0][0][0][0] = frac(7, 3);
  CHECK(forward_cov(g, 0, 1, 0, 1) == frac(7, 3));
}

TEST_CASE("forward_cov is symmetric for symmetric d") {
  PhiloxRng rng(99, 0);
  GermData g = random_germ(rng, 1, 6);
  for (int k = 1; k <= 4; ++k)
    for (int m = 1; m <= 4; ++m)
      CHECK(forward_cov(g, 0, k, 0, m) == forward_cov(g, 0, m, 0, k));
}

TEST_CASE("cross-component covariance vanishes without coupling") {
  GermData g = GermData::zero(2);
  g.c[0][0] = frac(1, 2);
  g.c[1][1] = frac(-1, 3);
  for (int k = 1; k <= 4; ++k)
    for (int m = 1; m <= 4; ++m)
      CHECK(forward_cov(g, 0, k, 1, m) == Rat(0));
}

TEST_CASE("inverse LLN of the uniform moments is the zero germ") {
  LimitData l;
  l.K = 8;
  l.group = {0};
  l.p = {{}};
  for (int k = 0; k <= 8; ++k) l.p[0].push_back(frac(1, k + 1));
  l.cov = {{RatMatrix(8, std::vector<Rat>(8, Rat(0)))}};
  auto c = inverse_lln(l);
  for (const Rat& v : c[0]) CHECK(v == Rat(0));
}

TEST_CASE("inverse of a lone cov(1,1) in closed form") {
  // With c = 0 the weight series is f'/f^2 = -1/(1+z)^2, so a lone
  // cov(1,1) = v pulls back to d_{a,b} = (a-1)!(b-1)! v (-1)^{a+b} a b.
  LimitData l;
  l.K = 6;
  l.group = {0};
  l.p = {{}};
  for (int k = 0; k <= 6; ++k) l.p[0].push_back(frac(1, k + 1));
  l.cov = {{RatMatrix(6, std::vector<Rat>(6, Rat(0)))}};
  l.cov[0][0][0][0] = frac(5, 4);
  GermData g = inverse_germ(l);
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b) {
      Rat expect = frac(5, 4) * Rat(factorial(a - 1) * factorial(b - 1)) *
                   Rat(a) * Rat(b) * (((a + b) % 2) ? -1 : 1);
      CHECK(g.d[0][0][a - 1][b - 1] == expect);
    }
  // and pushing that germ forward reproduces the lone covariance exactly
  LimitData back = forward_limits(g);
  CHECK(back.cov == l.cov);
  CHECK(back.p == l.p);
}

TEST_CASE("forward/inverse round trip is exact on random germs") {
  PhiloxRng rng(4242, 0);
  for (int trial = 0; trial < 8; ++trial) {
    GermData g = random_germ(rng, 1, 6);
    GermData back = inverse_germ(forward_limits(g));
    CHECK(back.c == g.c);
    CHECK(back.d == g.d);
  }
}

TEST_CASE("round trip with two coupled components") {
  PhiloxRng rng(777, 0);
  GermData g = random_germ(rng, 2, 5);
  GermData back = inverse_germ(forward_limits(g));
  CHECK(back.c == g.c);
  CHECK(back.d == g.d);
}

TEST_CASE("triangularity: high coefficients leave low outputs alone") {
  PhiloxRng rng(5, 0);
  GermData g = random_germ(rng, 1, 8);
  GermData h = g;
  h.c[0][6] += Rat(3);  // c_7: p(k) for k <= 6 cannot see it
  for (int k = 0; k <= 6; ++k)
    CHECK(forward_lln(g, 0, k) == forward_lln(h, 0, k));
  // ... nor can cov(k,m) for k+m <= 6 (the universal term mixes c up to
  // order k+m).
  for (int k = 1; k <= 5; ++k)
    for (int m = 1; m + k <= 6; ++m)
      CHECK(forward_cov(g, 0, k, 0, m) == forward_cov(h, 0, k, 0, m));
  // d is strictly triangular: a high d entry never reaches lower cov.
  GermData h2 = g;
  h2.d[0][0][6][5] += Rat(2);  // d_{7,6}
  h2.d[0][0][5][6] += Rat(2);
  for (int k = 1; k <= 6; ++k)
    for (int m = 1; m <= 5; ++m)
      CHECK(forward_cov(g, 0, k, 0, m) == forward_cov(h2, 0, k, 0, m));
}

TEST_CASE("multilevel fold adds tail log-weight germs per level") {
  // one group, two levels (channels 0 and 1), one inter-level weight germ
  GermData base = GermData::zero(2, 4);
  base.group = {0, 0};
  base.c[0][0] = frac(1, 2);
  base.c[1][0] = frac(1, 2);
  std::vector<std::vector<std::vector<Rat>>> lng_c = {
      {{Rat(1), Rat(0), Rat(0), Rat(0)}}};  // group 0, weight q=0
  RatMatrix dq(4, std::vector<Rat>(4, Rat(0)));
  dq[0][0] = frac(1, 3);
  std::vector<std::vector<RatMatrix>> lng_d = {{dq}};
  GermData g = GermData::multilevel(base, {0, 1}, lng_c, lng_d);
  // level 0 sees the weight, level 1 (past it) does not
  CHECK(g.c[0][0] == frac(3, 2));
  CHECK(g.c[1][0] == frac(1, 2));
  CHECK(g.d[0][0][0][0] == frac(1, 3));
  CHECK(g.d[0][1][0][0] == Rat(0));  // max(level) = 1 skips the weight
  CHECK(g.d[1][1][0][0] == Rat(0));
}

TEST_CASE("germ coefficients emerge from finite-N log-derivatives") {
  // lambda = (floor(aN), ..., floor(aN)): (1/N) d^k ln S converges to
  // a (-1)^{k-1} (k-1)! with error at most (k-1)!/N.
  const Rat a = frac(1, 3);
  for (int N = 2; N <= 4; ++N) {
    const long part = (N / 3);  // floor(aN)
    Signature lam(N, part);
    FiniteMeasure rho = FiniteMeasure::delta(lam);
    for (int k = 1; k <= 3; ++k) {
      const Rat ck = sgf_log_derivs(rho, {{k}}) / Rat(N);
      const Rat target = a * Rat(factorial(k - 1)) * ((k % 2) ? 1 : -1);
      Rat err = ck - target;
      if (err < 0) err = -err;
      CHECK(err <= frac(1, N) * Rat(factorial(k - 1)));
    }
  }
}
