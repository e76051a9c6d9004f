// Germ coefficients (c_a, d_{a,b}) of log Schur generating functions and the
// forward/inverse maps between them and LLN/CLT limit data (p(k), cov(k,m)).
//
// A GermData is a finite family of "channels".  Each channel carries its own
// c-coefficients; d couples channel pairs.  The group label drives the
// universal covariance term: it appears exactly when two channels share a
// group (one channel = the classic single-measure case; distinct groups =
// independent components; several channels per group = levels of one
// multilevel family).  Coefficients are exact: c_a = 0 for a > K and
// d_{a,b} = 0 for max(a,b) > K, so every map below is exact in rationals.
#pragma once

#include "schurtile/rat.hpp"
#include "schurtile/series.hpp"

#include <vector>

namespace schurtile {

using RatMatrix = std::vector<std::vector<Rat>>;

struct GermData {
  int K = 8;
  std::vector<int> group;                 // universal term iff groups equal
  std::vector<std::vector<Rat>> c;        // c[ch][a-1], a = 1..K
  std::vector<std::vector<RatMatrix>> d;  // d[ch1][ch2][a-1][b-1], K x K

  int channels() const { return static_cast<int>(c.size()); }
  static GermData zero(int channels, int K = 8);
  void validate() const;  // shapes + d[i][j][a][b] == d[j][i][b][a]

  // Multilevel construction: channel ch lives in group[ch] at level[ch].
  // lng_c[g][q] / lng_d[g][q] are the germ coefficients of the q-th
  // log-weight of group g; they are folded into c of every channel of that
  // group with level <= q, and into d of every same-group pair with
  // max(level) <= q.  Forward maps are unchanged afterwards.
  static GermData multilevel(
      const GermData& base, const std::vector<int>& level,
      const std::vector<std::vector<std::vector<Rat>>>& lng_c,
      const std::vector<std::vector<RatMatrix>>& lng_d);
};

struct LimitData {
  int K = 8;
  std::vector<int> group;
  std::vector<std::vector<Rat>> p;         // p[ch][k], k = 0..K; p[ch][0] = 1
  std::vector<std::vector<RatMatrix>> cov; // cov[i][j][k-1][m-1], k,m = 1..K
  int channels() const { return static_cast<int>(p.size()); }
  void validate() const;
};

// F(z) = (1+z)(1/z + sum_{a>=1} c_a z^{a-1}/(a-1)!), an exact Laurent
// polynomial for a finite c-family.
Series1<Rat> germ_F(const std::vector<Rat>& c);

// p(k) = [z^-1] F(z)^{k+1} / ((k+1)(1+z)).
Rat forward_lln(const GermData& g, int ch, int k);

// cov(k1,k2) = [z^-1 w^-1] F_{ch1}(z)^{k1} F_{ch2}(w)^{k2} *
//   (U(z,w)*[group match] + D_{ch1,ch2}(z,w)),
// with U the explicit double series (sum_a z^a/w^{1+a})^2.
Rat forward_cov(const GermData& g, int ch1, int k1, int ch2, int k2);

// All p(k), k <= K and cov(k,m), k,m <= K.
LimitData forward_limits(const GermData& g);

// c-coefficients from p via functional inversion of sum_k p(k) u^{-k-1}.
std::vector<std::vector<Rat>> inverse_lln(const LimitData& lim);

// d-coefficients from cov and already-recovered c; the universal part is
// subtracted via the same explicit-kernel residue as forward_cov.
std::vector<std::vector<RatMatrix>> inverse_cov(
    const LimitData& lim, const std::vector<std::vector<Rat>>& c);

// Both halves packaged as a GermData.
GermData inverse_germ(const LimitData& lim);

}  // namespace schurtile
