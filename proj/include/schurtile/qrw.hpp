// Quantized random walk on signatures: one tensor step multiplies the Schur
// generating function by s_nu / s_nu(1^N), which decomposes over mu with
// exact probabilities c^mu_{lam,nu} dim(mu) / (dim(lam) dim(nu)).  The step
// diagram nu is restricted to a single row or a single column, where the
// Littlewood-Richardson multiplicities are 0/1 (Pieri strips); the general
// case is an extension point.
//
// The time-t limit covariance app_cov depends on nu only through |nu|: a
// walk of t N^2 steps shifts the germ by c_1 += t|nu| and d_{1,1} -= t|nu|.
// Centered observables are martingales in the limit, so the covariance at
// times t_i <= t_j carries the earlier time in every factor.  At
// t_i = t_j = 0 this is forward_cov of the initial germ, identically.
#pragma once

#include "schurtile/core.hpp"
#include "schurtile/germ.hpp"
#include "schurtile/measures.hpp"
#include "schurtile/rng.hpp"

#include <utility>
#include <vector>

namespace schurtile {

struct WalkSpec {
  Signature nu;           // single row (p) or single column (1,...,1)
  int N = 1;              // ambient rank
  long steps = 0;         // trajectory length
  FiniteMeasure initial;  // one component on GT_N
  void validate() const;  // throws unless nu is a row/column fitting in N
};

// Exact one-step kernel lam -> mu; probabilities sum to 1, support is lam
// plus a horizontal (row nu) or vertical (column nu) strip of |nu| boxes.
std::vector<std::pair<Signature, Rat>> step_distribution(const Signature& lam,
                                                         const Signature& nu,
                                                         int N);

// One Markov trajectory (steps+1 signatures, the first drawn from initial).
// The one-box step uses O(N) dimension ratios per candidate; larger steps
// fall back to the exact kernel.
std::vector<Signature> walk_sample(const WalkSpec& spec, PhiloxRng& rng);

// Limit covariance of (p_{k_i} at time t_i N^2, p_{k_j} at time t_j N^2)
// for a walk with |nu| boxes per step started from germ channel ch.
// Requires 0 <= t_i <= t_j.
Rat app_cov(const GermData& germ0, long nu_boxes, const Rat& ti, const Rat& tj,
            int ki, int kj, int ch = 0);

// N^r * d^{multi} log-normalized-Schur of lam at (1,...,1) for N in
// [Nmin, Nmax], where r is the number of active variables; multi lists the
// derivative order per variable.  The r = 1, order-1 values approach |lam|
// and the (1,1) mixed values approach -|lam|.
std::vector<std::pair<int, Rat>> lemapp_check(const Signature& lam,
                                              const std::vector<int>& multi,
                                              int Nmin, int Nmax);

}  // namespace schurtile
