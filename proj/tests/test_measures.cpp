#include "schurtile/measures.hpp"

#include "schurtile/rat.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

using namespace schurtile;

namespace {

// Fair mixture of (1,0) and (0,0) at N = 2; small enough to do by hand.
FiniteMeasure half_half() {
  FiniteMeasure rho;
  rho.N = {2};
  rho.atoms = {{{{1, 0}}, frac(1, 2)}, {{{0, 0}}, frac(1, 2)}};
  return rho;
}

}  // namespace

TEST_CASE("validate accepts good measures and rejects bad ones") {
  half_half().validate();
  FiniteMeasure::delta({3, 1, 0}).validate();

  FiniteMeasure bad = half_half();
  bad.atoms[0].second = frac(1, 3);  // weights sum to 5/6
  CHECK_THROWS(bad.validate());

  bad = half_half();
  bad.atoms[0].first = {{0, 1}};  // not weakly decreasing
  CHECK_THROWS(bad.validate());

  bad = half_half();
  bad.atoms[0].first = {{1, 0, 0}};  // wrong rank
  CHECK_THROWS(bad.validate());
}

TEST_CASE("power sums of single signatures") {
  // lam = (0,0), N = 2: positions (1/2, 0)
  CHECK(power_sum({0, 0}, 1) == frac(1, 2));
  CHECK(power_sum({0, 0}, 2) == frac(1, 4));
  // lam = (2,1), N = 2: positions (3/2, 1/2)
  CHECK(power_sum({2, 1}, 1) == Rat(2));
  CHECK(power_sum({2, 1}, 2) == frac(10, 4));
  // negative parts are fine
  CHECK(power_sum({0, -2}, 1) == frac(-1, 2));
  CHECK(power_sum({1, 0, -1}, 0) == Rat(1));
}

TEST_CASE("exact first moments") {
  CHECK(exact_moment(FiniteMeasure::delta({0, 0}), 0, 1) == frac(1, 2));
  CHECK(exact_moment(FiniteMeasure::delta({2, 1}), 0, 1) == Rat(2));
  CHECK(exact_moment(half_half(), 0, 2) == frac(5, 8));
}

TEST_CASE("joint cumulants match hand computations") {
  FiniteMeasure rho = half_half();
  // order 1 is the mean
  CHECK(joint_cumulant(rho, {{1, 0}}) == exact_moment(rho, 0, 1));
  // Var(p_1) = E[p_1^2] - E[p_1]^2 = 5/8 - 9/16
  CHECK(joint_cumulant(rho, {{1, 0}, {1, 0}}) == frac(1, 16));
  // p_1 = 1/2 + B/2 with B fair Bernoulli: kappa_3 = 0, kappa_4 = -1/128
  CHECK(joint_cumulant(rho, {{1, 0}, {1, 0}, {1, 0}}) == Rat(0));
  CHECK(joint_cumulant(rho, {{1, 0}, {1, 0}, {1, 0}, {1, 0}}) ==
        frac(-1, 128));
}

TEST_CASE("cumulants of order >= 2 vanish for deterministic measures") {
  FiniteMeasure rho = FiniteMeasure::delta({3, 1, 0});
  for (int r = 2; r <= 5; ++r) {
    std::vector<std::pair<int, int>> kh(r, {1, 0});
    kh[0].first = 2;  // mix the powers a bit
    CHECK(joint_cumulant(rho, kh) == Rat(0));
  }
}

TEST_CASE("mixed cumulants vanish across independent components") {
  // Product of two independent half_half components.
  FiniteMeasure rho;
  rho.N = {2, 2};
  for (long a : {1, 0})
    for (long b : {1, 0})
      rho.atoms.push_back({{{a, 0}, {b, 0}}, frac(1, 4)});
  rho.validate();
  CHECK(joint_cumulant(rho, {{1, 0}, {1, 1}}) == Rat(0));
  CHECK(joint_cumulant(rho, {{2, 0}, {1, 1}, {1, 1}}) == Rat(0));
  // while each component still has its own variance
  CHECK(joint_cumulant(rho, {{1, 0}, {1, 0}}) == frac(1, 16));
  CHECK(joint_cumulant(rho, {{1, 1}, {1, 1}}) == frac(1, 16));
}

TEST_CASE("fully correlated components share their covariance") {
  FiniteMeasure rho;
  rho.N = {2, 2};
  rho.atoms = {{{{1, 0}, {1, 0}}, frac(1, 2)}, {{{0, 0}, {0, 0}}, frac(1, 2)}};
  rho.validate();
  CHECK(joint_cumulant(rho, {{1, 0}, {1, 1}}) == frac(1, 16));
}

TEST_CASE("log-derivatives of the generating function: delta measures") {
  // lam = (1,1), N = 2: s_lam(x1,x2) = x1 x2, so ln S = ln(1+y1) in one
  // active variable; first derivative 1, mixed second derivative 0.
  FiniteMeasure rho = FiniteMeasure::delta({1, 1});
  CHECK(sgf_log_derivs(rho, {{1}}) == Rat(1));
  CHECK(sgf_log_derivs(rho, {{1, 1}}) == Rat(0));
  CHECK(sgf_log_derivs(rho, {{2}}) == Rat(-1));  // d^2/dy^2 ln(1+y)
}

TEST_CASE("log-derivatives of the generating function: a mixture") {
  // S(1+y) = 1 + y/4 for half_half in one variable.
  FiniteMeasure rho = half_half();
  CHECK(sgf_log_derivs(rho, {{1}}) == frac(1, 4));
  CHECK(sgf_log_derivs(rho, {{2}}) == frac(-1, 16));
  CHECK(sgf_log_derivs(rho, {{3}}) == frac(1, 32));  // 3! * coeff of y^3
}

TEST_CASE("first log-derivative equals E[p_1] - (N-1)/2") {
  std::vector<FiniteMeasure> cases = {
      FiniteMeasure::delta({2, 1}), FiniteMeasure::delta({4, 1, 0, -2}),
      half_half()};
  for (const auto& rho : cases) {
    const int N = rho.N[0];
    CHECK(sgf_log_derivs(rho, {{1}}) ==
          exact_moment(rho, 0, 1) - frac(N - 1, 2));
  }
}

TEST_CASE("log-derivatives factor across independent components") {
  FiniteMeasure rho;
  rho.N = {2, 3};
  for (long a : {2, 0})
    for (long b : {1, 0})
      rho.atoms.push_back({{{a, 0}, {b, 0, 0}}, frac(1, 4)});
  rho.validate();
  // ln S splits into a sum, so every mixed derivative vanishes...
  CHECK(sgf_log_derivs(rho, {{1}, {1}}) == Rat(0));
  CHECK(sgf_log_derivs(rho, {{2}, {1}}) == Rat(0));
  // ...and pure derivatives agree with the marginal measure.
  FiniteMeasure marg;
  marg.N = {3};
  marg.atoms = {{{{1, 0, 0}}, frac(1, 2)}, {{{0, 0, 0}}, frac(1, 2)}};
  CHECK(sgf_log_derivs(rho, {{}, {2}}) == sgf_log_derivs(marg, {{2}}));
}

TEST_CASE("empirical report recovers known Gaussian cumulants") {
  std::mt19937_64 gen(12345);
  std::normal_distribution<double> nd(1.5, 2.0);
  const int n = 20000;
  std::vector<std::vector<double>> x(n, std::vector<double>(2));
  for (auto& row : x) {
    row[0] = nd(gen);
    row[1] = 0.5 * row[0] + nd(gen);  // cov(0,1) = 0.5 * 4 = 2
  }
  MomentReport rep = empirical_report(x, 4);
  REQUIRE(rep.K == 2);
  CHECK(std::abs(rep.mean[0] - 1.5) < 5 * rep.mean_se[0]);
  CHECK(std::abs(rep.cov[0][0] - 4.0) < 5 * rep.cov_se[0][0]);
  CHECK(std::abs(rep.cov[0][1] - 2.0) < 5 * rep.cov_se[0][1]);
  CHECK(std::abs(rep.cov[1][1] - 5.0) < 5 * rep.cov_se[1][1]);
  // Gaussian: third and fourth cumulants vanish.
  CHECK(std::abs(rep.cum[0][0]) < 5 * rep.cum_se[0][0]);
  CHECK(std::abs(rep.cum[1][0]) < 5 * rep.cum_se[1][0]);
  // standard errors are in a sane range (neither zero nor huge)
  CHECK(rep.mean_se[0] > 1e-4);
  CHECK(rep.mean_se[0] < 0.1);
}

TEST_CASE("empirical k-statistics are exactly unbiased on tiny samples") {
  // For the 4-point sample {0,0,1,1}: mean 1/2, unbiased variance 1/3.
  std::vector<std::vector<double>> x = {{0}, {0}, {1}, {1}};
  MomentReport rep = empirical_report(x, 3);
  CHECK(rep.mean[0] == doctest::Approx(0.5));
  CHECK(rep.cov[0][0] == doctest::Approx(1.0 / 3.0));
  // symmetric sample: k3 = 0 exactly
  CHECK(rep.cum[0][0] == doctest::Approx(0.0));
}
