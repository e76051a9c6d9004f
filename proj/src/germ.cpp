#include "schurtile/germ.hpp"

#include <stdexcept>

namespace schurtile {

namespace {

using S1 = Series1<Rat>;
using S2 = Series2<Rat>;

RatMatrix zero_matrix(int K) {
  return RatMatrix(K, std::vector<Rat>(K, Rat(0)));
}

// ln(1+z) truncated at z^ord.
S1 log1p_series(int ord) {
  std::vector<Rat> c;
  for (int k = 1; k < ord; ++k) c.push_back(frac((k % 2) ? 1 : -1, k));
  return S1(1, std::move(c), ord);
}

S1 one_plus_z() { return S1(0, {Rat(1), Rat(1)}); }

// Residue [z^-1 w^-1] Fz^{k1} Fw^{k2} * kernel, where the kernel is the
// explicit universal double series (if wanted) plus the d-polynomial (if
// given).  Fz, Fw are exact Laurent polynomials, so the z-support of
// Fz^{-k1}... equivalently only s <= k1-1 of the universal series can
// contribute, which keeps the materialized window finite.
Rat kernel_residue(const S1& Fz, const S1& Fw, int k1, int k2, bool universal,
                   const RatMatrix* d) {
  const int K = d ? static_cast<int>(d->size()) : 0;
  const int ord1 = std::max(K, k1) + 1;
  const int lo2 = -1 - k1;
  const int ord2 = std::max(K, k2) + 1;
  S2 kern = S2::zero(0, ord1, lo2, ord2);
  if (universal)
    for (int s = 0; s <= k1 - 1; ++s) kern.at(s, -2 - s) += Rat(s + 1);
  if (d)
    for (int a = 1; a <= K; ++a)
      for (int b = 1; b <= K; ++b) {
        const Rat& v = (*d)[a - 1][b - 1];
        if (v != 0)
          kern.at(a - 1, b - 1) +=
              v / Rat(factorial(a - 1) * factorial(b - 1));
      }
  return kern.mul_var1(Fz.pow(k1)).mul_var2(Fw.pow(k2)).residue2();
}

}  // namespace

GermData GermData::zero(int channels, int K) {
  GermData g;
  g.K = K;
  g.group.resize(channels);
  for (int i = 0; i < channels; ++i) g.group[i] = i;
  g.c.assign(channels, std::vector<Rat>(K, Rat(0)));
  g.d.assign(channels, std::vector<RatMatrix>(channels, zero_matrix(K)));
  return g;
}

void GermData::validate() const {
  const int H = channels();
  if (static_cast<int>(group.size()) != H ||
      static_cast<int>(d.size()) != H)
    throw std::invalid_argument("GermData: shape mismatch");
  for (int i = 0; i < H; ++i) {
    if (static_cast<int>(c[i].size()) != K)
      throw std::invalid_argument("GermData: c must have K entries");
    if (static_cast<int>(d[i].size()) != H)
      throw std::invalid_argument("GermData: d shape mismatch");
    for (int j = 0; j < H; ++j) {
      if (static_cast<int>(d[i][j].size()) != K)
        throw std::invalid_argument("GermData: d blocks must be K x K");
      for (int a = 0; a < K; ++a) {
        if (static_cast<int>(d[i][j][a].size()) != K)
          throw std::invalid_argument("GermData: d blocks must be K x K");
        for (int b = 0; b < K; ++b)
          if (d[i][j][a][b] != d[j][i][b][a])
            throw std::invalid_argument("GermData: d not symmetric");
      }
    }
  }
}

GermData GermData::multilevel(
    const GermData& base, const std::vector<int>& level,
    const std::vector<std::vector<std::vector<Rat>>>& lng_c,
    const std::vector<std::vector<RatMatrix>>& lng_d) {
  base.validate();
  GermData g = base;
  const int H = g.channels();
  if (static_cast<int>(level.size()) != H)
    throw std::invalid_argument("multilevel: level per channel required");
  for (int i = 0; i < H; ++i) {
    const int grp = g.group[i];
    for (int q = level[i]; q < static_cast<int>(lng_c[grp].size()); ++q)
      for (int a = 0; a < g.K; ++a) g.c[i][a] += lng_c[grp][q][a];
  }
  for (int i = 0; i < H; ++i)
    for (int j = 0; j < H; ++j) {
      if (g.group[i] != g.group[j]) continue;
      const int grp = g.group[i];
      for (int q = std::max(level[i], level[j]);
           q < static_cast<int>(lng_d[grp].size()); ++q)
        for (int a = 0; a < g.K; ++a)
          for (int b = 0; b < g.K; ++b) g.d[i][j][a][b] += lng_d[grp][q][a][b];
    }
  g.validate();
  return g;
}

void LimitData::validate() const {
  const int H = channels();
  if (static_cast<int>(group.size()) != H ||
      static_cast<int>(cov.size()) != H)
    throw std::invalid_argument("LimitData: shape mismatch");
  for (int i = 0; i < H; ++i) {
    if (static_cast<int>(p[i].size()) != K + 1 || p[i][0] != 1)
      throw std::invalid_argument("LimitData: need p(0..K) with p(0)=1");
    for (int j = 0; j < H; ++j)
      for (int a = 0; a < K; ++a)
        for (int b = 0; b < K; ++b)
          if (cov[i][j][a][b] != cov[j][i][b][a])
            throw std::invalid_argument("LimitData: cov not symmetric");
  }
}

Series1<Rat> germ_F(const std::vector<Rat>& c) {
  // 1/z + sum_a c_a z^{a-1}/(a-1)!, an exact Laurent polynomial.
  std::vector<Rat> base(c.size() + 1, Rat(0));
  base[0] = Rat(1);
  for (std::size_t a = 1; a <= c.size(); ++a)
    base[a] = c[a - 1] / Rat(factorial(static_cast<int>(a) - 1));
  S1 f(-1, std::move(base));
  return f * one_plus_z();
}

Rat forward_lln(const GermData& g, int ch, int k) {
  if (ch < 0 || ch >= g.channels())
    throw std::out_of_range("forward_lln: channel");
  if (k < 0) throw std::invalid_argument("forward_lln: k < 0");
  const S1 F = germ_F(g.c[ch]);
  const S1 num = F.pow(k + 1) * one_plus_z().inverse(k + 3);
  return num.coeff(-1) / Rat(k + 1);
}

Rat forward_cov(const GermData& g, int ch1, int k1, int ch2, int k2) {
  if (ch1 < 0 || ch1 >= g.channels() || ch2 < 0 || ch2 >= g.channels())
    throw std::out_of_range("forward_cov: channel");
  if (k1 < 1 || k2 < 1) throw std::invalid_argument("forward_cov: k < 1");
  const S1 Fz = germ_F(g.c[ch1]);
  const S1 Fw = germ_F(g.c[ch2]);
  return kernel_residue(Fz, Fw, k1, k2, g.group[ch1] == g.group[ch2],
                        &g.d[ch1][ch2]);
}

LimitData forward_limits(const GermData& g) {
  g.validate();
  LimitData l;
  l.K = g.K;
  l.group = g.group;
  const int H = g.channels();
  l.p.assign(H, {});
  l.cov.assign(H, std::vector<RatMatrix>(H, zero_matrix(g.K)));
  for (int i = 0; i < H; ++i) {
    for (int k = 0; k <= g.K; ++k) l.p[i].push_back(forward_lln(g, i, k));
    for (int j = 0; j < H; ++j)
      for (int k = 1; k <= g.K; ++k)
        for (int m = 1; m <= g.K; ++m)
          l.cov[i][j][k - 1][m - 1] = forward_cov(g, i, k, j, m);
  }
  return l;
}

std::vector<std::vector<Rat>> inverse_lln(const LimitData& lim) {
  lim.validate();
  std::vector<std::vector<Rat>> out;
  const int K = lim.K;
  for (int ch = 0; ch < lim.channels(); ++ch) {
    // E(u) = sum_k p(k) u^{-k-1} = g(1/u) with g(v) = v * sum_k p(k) v^k, so
    // E^{(-1)}(w) = 1 / g^{(-1)}(w); evaluate at w = ln(1+z).
    S1 A(0, lim.p[ch], K + 1);
    const S1 g = A.shifted(1);
    const S1 ginv = g.functional_inverse();
    const S1 h = ginv.compose(log1p_series(K + 2));
    const S1 rhs =
        h.inverse() * one_plus_z().inverse(K + 3) - S1(-1, {Rat(1)});
    std::vector<Rat> c;
    for (int a = 1; a <= K; ++a) c.push_back(rhs.coeff(a - 1) *
                                             Rat(factorial(a - 1)));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::vector<RatMatrix>> inverse_cov(
    const LimitData& lim, const std::vector<std::vector<Rat>>& c) {
  const int K = lim.K, H = lim.channels();
  const int T = 2 * K + 4;  // working truncation for the 1/f expansions

  // Per channel: L_k = (F'/F) F^{-k}, whose z^{a-1} coefficient is the weight
  // of cov(k, .) in d_{a, .}.  L_k has valuation k-1, hence triangularity.
  std::vector<std::vector<S1>> L(H);
  std::vector<S1> F(H);
  for (int i = 0; i < H; ++i) {
    F[i] = germ_F(c[i]);
    const S1 Finv = F[i].inverse(T);
    const S1 ratio = F[i].derivative() * Finv;
    S1 fp = S1::constant(Rat(1));
    fp.truncate(T);
    L[i].push_back(ratio);  // placeholder for k=0, unused
    for (int k = 1; k <= K; ++k) {
      fp = fp * Finv;
      L[i].push_back(ratio * fp);
    }
  }

  std::vector<std::vector<RatMatrix>> d(
      H, std::vector<RatMatrix>(H, zero_matrix(K)));
  for (int i = 0; i < H; ++i)
    for (int j = 0; j < H; ++j) {
      const bool same = lim.group[i] == lim.group[j];
      // residual covariance = cov minus the universal part R(k,m)
      RatMatrix resid = lim.cov[i][j];
      if (same)
        for (int k = 1; k <= K; ++k)
          for (int m = 1; m <= K; ++m)
            resid[k - 1][m - 1] -=
                kernel_residue(F[i], F[j], k, m, true, nullptr);
      for (int a = 1; a <= K; ++a)
        for (int b = 1; b <= K; ++b) {
          Rat s(0);
          for (int k = 1; k <= a; ++k) {
            const Rat la = L[i][k].coeff(a - 1);
            if (la == 0) continue;
            for (int m = 1; m <= b; ++m)
              s += resid[k - 1][m - 1] * la * L[j][m].coeff(b - 1);
          }
          d[i][j][a - 1][b - 1] =
              s * Rat(factorial(a - 1) * factorial(b - 1));
        }
    }
  return d;
}

GermData inverse_germ(const LimitData& lim) {
  GermData g;
  g.K = lim.K;
  g.group = lim.group;
  g.c = inverse_lln(lim);
  g.d = inverse_cov(lim, g.c);
  g.validate();
  return g;
}

}  // namespace schurtile
