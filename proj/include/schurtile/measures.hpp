// Finite-support measures on tuples of signatures, their exact moments and
// cumulants, exact log-derivatives of the Schur generating function at the
// identity, and empirical cumulant reports for Monte Carlo output.
#pragma once

#include "schurtile/core.hpp"
#include "schurtile/mpoly.hpp"
#include "schurtile/rat.hpp"

#include <utility>
#include <vector>

namespace schurtile {

// A probability measure with finite support on GT_{N_1} x ... x GT_{N_H}.
struct FiniteMeasure {
  std::vector<int> N;  // component ranks N_h
  // atoms: one signature per component, with a positive rational weight
  std::vector<std::pair<std::vector<Signature>, Rat>> atoms;

  int components() const { return static_cast<int>(N.size()); }
  void validate() const;  // throws on bad support or weights not summing to 1

  static FiniteMeasure delta(const Signature& lam);
};

// Normalized power sum p_k of a single signature:
// p_k = sum_i ((lam_i + N - i)/N)^k   (and p_0 = 1).
Rat power_sum(const Signature& lam, int k);

// E[p_{k,h}] under rho.
Rat exact_moment(const FiniteMeasure& rho, int h, int k);

// Joint cumulant of (p_{k_1,h_1}, ..., p_{k_r,h_r}), r <= 6, via the
// set-partition sum with (-1)^{t-1}(t-1)! weights.
Rat joint_cumulant(const FiniteMeasure& rho,
                   const std::vector<std::pair<int, int>>& kh);

// d^{multi_index} ln S_rho at x = (1,...,1).  multi_index[h] lists the
// exponents of the active variables of component h (may be empty).
Rat sgf_log_derivs(const FiniteMeasure& rho,
                   const std::vector<std::vector<int>>& multi_index);

// Empirical cumulants with jackknife standard errors.  Input is an n x K
// matrix: row = sample, column = observable.
struct MomentReport {
  int K = 0, r = 2;
  std::vector<double> mean, mean_se;
  std::vector<std::vector<double>> cov, cov_se;    // K x K
  // cum[j][k]: order-(j+3) cumulant of observable k (j = 0..r-3)
  std::vector<std::vector<double>> cum, cum_se;
};
MomentReport empirical_report(const std::vector<std::vector<double>>& samples,
                              int r = 4, int jackknife_blocks = 50);

}  // namespace schurtile
