#include "schurtile/schur.hpp"

#include <algorithm>
#include <stdexcept>

namespace schurtile {

namespace {

Signature padded(const Signature& lam, int N) {
  if (static_cast<int>(lam.size()) > N)
    throw std::invalid_argument("signature longer than N");
  Signature v = lam;
  v.resize(N, 0);
  if (!is_signature(v))
    throw std::invalid_argument("not weakly decreasing after padding");
  return v;
}

// Determinant of a rational matrix by Gaussian elimination.
Rat det_rat(std::vector<std::vector<Rat>> a) {
  const int n = static_cast<int>(a.size());
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    const Rat inv = Rat(1) / a[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rat f = a[r][col] * inv;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

// Determinant of an N x N MPoly matrix by expansion over column subsets
// (minors[mask] = det of the first popcount(mask) rows on columns in mask).
MPoly det_mpoly(const std::vector<std::vector<MPoly>>& m, int nvars, int T) {
  const int n = static_cast<int>(m.size());
  std::vector<MPoly> minors(static_cast<std::size_t>(1) << n,
                            MPoly(nvars, T));
  minors[0] = MPoly::constant(nvars, T, Rat(1));
  for (unsigned mask = 0; mask < minors.size(); ++mask) {
    const int row = __builtin_popcount(mask);
    if (row >= n || minors[mask].is_zero()) continue;
    for (int col = 0; col < n; ++col) {
      if (mask & (1u << col)) continue;
      if (m[row][col].is_zero()) continue;
      // new inversions = number of already-used columns above col
      const int inv = __builtin_popcount(mask >> (col + 1));
      MPoly contrib = minors[mask] * m[row][col];
      if (inv & 1) contrib = contrib * Rat(-1);
      minors[mask | (1u << col)] = minors[mask | (1u << col)] + contrib;
    }
  }
  return minors[minors.size() - 1];
}

}  // namespace

Rat schur_dim(const Signature& lam, int N) {
  const Signature v = padded(lam, N);
  Rat num(1), den(1);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      num *= Rat(v[i] - v[j] + j - i);
      den *= Rat(j - i);
    }
  return num / den;
}

Rat schur_dim_positions(const std::vector<long>& p) {
  const int n = static_cast<int>(p.size());
  Rat num(1), den(1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      num *= Rat(p[j] - p[i]);
      den *= Rat(j - i);
    }
  return num / den;
}

Rat principal_t(const Signature& lam, int N, const Rat& t) {
  return rat_pow(t, weight(lam)) * schur_dim(lam, N);
}

Rat schur_eval(const Signature& lam, const std::vector<Rat>& x) {
  const int N = static_cast<int>(x.size());
  const Signature v = padded(lam, N);
  std::vector<std::vector<Rat>> a(N, std::vector<Rat>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) a[i][j] = rat_pow(x[i], v[j] + N - 1 - j);
  Rat vand(1);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) vand *= (x[i] - x[j]);
  if (vand == 0)
    throw std::invalid_argument("schur_eval: points must be distinct");
  return det_rat(std::move(a)) / vand;
}

SchurTaylor schur_taylor(const Signature& lam, int N, int m, int T) {
  if (N > 8) throw std::length_error("schur_taylor: N capped at 8");
  if (m < 0 || m > N) throw std::invalid_argument("schur_taylor: bad m");
  Signature v = padded(lam, N);
  const long shift = std::min<long>(v.back(), 0);  // c = -shift >= 0
  for (auto& part : v) part -= shift;

  // kmax: largest index of a complete homogeneous polynomial we touch.
  const long kmax = v[0] + N - 1;

  // Powers (1+y_i)^a for each active variable, truncated at degree T.
  std::vector<std::vector<MPoly>> pw(m);
  for (int i = 0; i < m; ++i) {
    pw[i].reserve(kmax + 1);
    pw[i].push_back(MPoly::constant(m, T, Rat(1)));
    const MPoly x = MPoly::constant(m, T, Rat(1)) + MPoly::var(m, T, i);
    for (long a = 1; a <= kmax; ++a) pw[i].push_back(pw[i].back() * x);
  }

  // h_j of the m active variables, built one variable at a time.
  std::vector<MPoly> h(kmax + 1, MPoly(m, T));
  h[0] = MPoly::constant(m, T, Rat(1));
  for (int i = 0; i < m; ++i) {
    std::vector<MPoly> nh(kmax + 1, MPoly(m, T));
    for (long j = 0; j <= kmax; ++j)
      for (long a = 0; a <= j; ++a)
        if (!h[j - a].is_zero()) nh[j] = nh[j] + pw[i][a] * h[j - a];
    h = std::move(nh);
  }

  // Fold in the N-m variables sitting at 1:
  // h_k(x_1..x_m, 1^{N-m}) = sum_s h_s(x_1..x_m) * C(k-s + N-m-1, N-m-1).
  const int rest = N - m;
  std::vector<MPoly> hN(kmax + 1, MPoly(m, T));
  if (rest == 0) {
    hN = h;
  } else {
    for (long k = 0; k <= kmax; ++k)
      for (long s = 0; s <= k; ++s)
        if (!h[s].is_zero())
          hN[k] = hN[k] + h[s] * Rat(binomial_int(k - s + rest - 1, rest - 1));
  }

  // Jacobi-Trudi: s_v = det( h_{v_i - i + j} ), 1 <= i, j <= N.
  std::vector<std::vector<MPoly>> jt(N, std::vector<MPoly>(N, MPoly(m, T)));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const long k = v[i] - (i + 1) + (j + 1);
      if (k >= 0) jt[i][j] = hN[k];
    }
  MPoly s = det_mpoly(jt, m, T);

  // Normalize and undo the shift: multiply by prod_i (1+y_i)^{shift}.
  const Rat dim = schur_dim(v, N);
  s = s * (Rat(1) / dim);
  if (shift != 0) {
    const long c = -shift;
    MPoly inv_pow(m, T);
    for (int i = 0; i < m; ++i) {
      MPoly f(m, T);
      for (int b = 0; b <= T; ++b) {
        MPoly::Expo e(m, 0);
        e[i] = b;
        Rat coef = Rat((b % 2) ? -1 : 1) * Rat(binomial_int(c + b - 1, b));
        f.add_term(e, coef);
      }
      s = s * f;
    }
  }
  return SchurTaylor{lam, N, m, std::move(s)};
}

std::vector<std::pair<Signature, Rat>> pieri_box(const Signature& lam,
                                                int N) {
  const Signature v = padded(lam, N);
  const Rat dl = schur_dim(v, N) * Rat(N);
  std::vector<std::pair<Signature, Rat>> out;
  for (int i = 0; i < N; ++i) {
    if (i > 0 && v[i - 1] == v[i]) continue;  // not addable
    Signature mu = v;
    mu[i] += 1;
    out.emplace_back(mu, schur_dim(mu, N) / dl);
  }
  return out;
}

namespace {
void strips_rec(const Signature& lam, int N, int i, long rem, bool horizontal,
                Signature& cur, std::vector<Signature>& out) {
  if (i == N) {
    if (rem == 0) out.push_back(cur);
    return;
  }
  const long lo = lam[i];
  long hi;
  if (horizontal) {
    // horizontal strip: lam_{i-1} >= mu_i >= lam_i (mu interlaces on top)
    hi = (i == 0) ? lam[i] + rem : std::min<long>(lam[i - 1], lam[i] + rem);
  } else {
    // vertical strip: at most one box per row
    hi = std::min<long>(lo + 1, lo + rem);
    if (i > 0) hi = std::min<long>(hi, cur[i - 1]);
  }
  for (long part = hi; part >= lo; --part) {
    cur[i] = part;
    strips_rec(lam, N, i + 1, rem - (part - lo), horizontal, cur, out);
  }
  cur[i] = lam[i];
}
}  // namespace

std::vector<Signature> add_horizontal_strips(const Signature& lam, int p,
                                             int N) {
  const Signature v = padded(lam, N);
  Signature cur = v;
  std::vector<Signature> out;
  strips_rec(v, N, 0, p, /*horizontal=*/true, cur, out);
  return out;
}

std::vector<Signature> add_vertical_strips(const Signature& lam, int p,
                                           int N) {
  const Signature v = padded(lam, N);
  Signature cur = v;
  std::vector<Signature> out;
  strips_rec(v, N, 0, p, /*horizontal=*/false, cur, out);
  return out;
}

}  // namespace schurtile
