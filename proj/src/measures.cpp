#include "schurtile/measures.hpp"

#include "schurtile/schur.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace schurtile {

void FiniteMeasure::validate() const {
  if (N.empty()) throw std::invalid_argument("FiniteMeasure: no components");
  for (int n : N)
    if (n < 1) throw std::invalid_argument("FiniteMeasure: rank < 1");
  if (atoms.empty()) throw std::invalid_argument("FiniteMeasure: no atoms");
  Rat total(0);
  for (const auto& [sigs, w] : atoms) {
    if (static_cast<int>(sigs.size()) != components())
      throw std::invalid_argument("FiniteMeasure: atom arity mismatch");
    for (int h = 0; h < components(); ++h) {
      if (static_cast<int>(sigs[h].size()) != N[h])
        throw std::invalid_argument("FiniteMeasure: signature length != N");
      if (!is_signature(sigs[h]))
        throw std::invalid_argument("FiniteMeasure: not a signature");
    }
    if (w <= 0) throw std::invalid_argument("FiniteMeasure: weight <= 0");
    total += w;
  }
  if (total != 1)
    throw std::invalid_argument("FiniteMeasure: weights do not sum to 1");
}

FiniteMeasure FiniteMeasure::delta(const Signature& lam) {
  FiniteMeasure rho;
  rho.N = {static_cast<int>(lam.size())};
  rho.atoms = {{{lam}, Rat(1)}};
  return rho;
}

Rat power_sum(const Signature& lam, int k) {
  const int N = static_cast<int>(lam.size());
  if (k == 0) return Rat(1);
  Rat s(0);
  for (int i = 0; i < N; ++i)
    s += rat_pow(frac(lam[i] + N - (i + 1), N), k);
  return s;
}

Rat exact_moment(const FiniteMeasure& rho, int h, int k) {
  if (h < 0 || h >= rho.components())
    throw std::out_of_range("exact_moment: component index");
  Rat s(0);
  for (const auto& [sigs, w] : rho.atoms) s += w * power_sum(sigs[h], k);
  return s;
}

// Mixed moment E[prod_j p_{k_j, h_j}] over a subset of indices.
static Rat mixed_moment(const FiniteMeasure& rho,
                        const std::vector<std::pair<int, int>>& kh,
                        const std::vector<int>& idx) {
  Rat s(0);
  for (const auto& [sigs, w] : rho.atoms) {
    Rat t = w;
    for (int j : idx) t *= power_sum(sigs[kh[j].second], kh[j].first);
    s += t;
  }
  return s;
}

Rat joint_cumulant(const FiniteMeasure& rho,
                   const std::vector<std::pair<int, int>>& kh) {
  const int r = static_cast<int>(kh.size());
  if (r < 1 || r > 6)
    throw std::invalid_argument("joint_cumulant: order must be in 1..6");
  for (const auto& [k, h] : kh) {
    if (k < 1) throw std::invalid_argument("joint_cumulant: k < 1");
    if (h < 0 || h >= rho.components())
      throw std::out_of_range("joint_cumulant: component index");
  }
  Rat acc(0);
  for (const auto& part : set_partitions(r)) {
    const int t = static_cast<int>(part.size());
    Rat term = frac((t % 2) ? 1 : -1, 1) * Rat(factorial(t - 1));
    for (const auto& block : part) term *= mixed_moment(rho, kh, block);
    acc += term;
  }
  return acc;
}

Rat sgf_log_derivs(const FiniteMeasure& rho,
                   const std::vector<std::vector<int>>& multi_index) {
  const int H = rho.components();
  if (static_cast<int>(multi_index.size()) != H)
    throw std::invalid_argument("sgf_log_derivs: component count mismatch");
  int T = 0, nvars = 0;
  for (const auto& mi : multi_index)
    for (int e : mi) {
      if (e < 0) throw std::invalid_argument("sgf_log_derivs: exponent < 0");
      T += e;
      ++nvars;
    }
  if (T > 8)
    throw std::invalid_argument("sgf_log_derivs: total order must be <= 8");
  for (int h = 0; h < H; ++h) {
    if (static_cast<int>(multi_index[h].size()) > rho.N[h])
      throw std::invalid_argument("sgf_log_derivs: more variables than rank");
    if (rho.N[h] > 8)
      throw std::invalid_argument("sgf_log_derivs: rank must be <= 8");
  }

  // Assemble S(1 + y) = sum_atoms w * prod_h s_{lam_h}(1+y, 1^...)/dim as one
  // polynomial in all active variables, then read the log coefficient.
  MPoly S(nvars, T);
  for (const auto& [sigs, w] : rho.atoms) {
    MPoly term = MPoly::constant(nvars, T, w);
    int off = 0;
    for (int h = 0; h < H; ++h) {
      const int m = static_cast<int>(multi_index[h].size());
      if (m == 0) continue;
      SchurTaylor st = schur_taylor(sigs[h], rho.N[h], m, T);
      std::vector<int> slot(m);
      std::iota(slot.begin(), slot.end(), off);
      term = term * st.poly.embed(nvars, slot);
      off += m;
    }
    S = S + term;
  }
  MPoly L = S.log();

  MPoly::Expo e;
  Rat fact(1);
  for (const auto& mi : multi_index)
    for (int k : mi) {
      e.push_back(k);
      fact *= Rat(factorial(k));
    }
  return L.coeff(e) * fact;
}

// ---------------------------------------------------------------------------
// Empirical cumulants.

namespace {

// Central moments m_2..m_6 of one column.
struct Central {
  double mean = 0;
  double m[7] = {0, 0, 0, 0, 0, 0, 0};
};

Central central_moments(const std::vector<std::vector<double>>& x, int col,
                        int maxo) {
  Central c;
  const int n = static_cast<int>(x.size());
  for (const auto& row : x) c.mean += row[col];
  c.mean /= n;
  for (const auto& row : x) {
    double d = row[col] - c.mean, p = d;
    for (int o = 2; o <= maxo; ++o) {
      p *= d;
      c.m[o] += p;
    }
  }
  for (int o = 2; o <= maxo; ++o) c.m[o] /= n;
  return c;
}

// Univariate cumulant of order o: unbiased k-statistics for o <= 4, plug-in
// above.
double cumulant_of(const Central& c, int n, int o) {
  const double m2 = c.m[2], m3 = c.m[3], m4 = c.m[4];
  switch (o) {
    case 1:
      return c.mean;
    case 2:
      return n > 1 ? n * m2 / (n - 1.0) : 0.0;
    case 3:
      return n > 2 ? double(n) * n * m3 / ((n - 1.0) * (n - 2.0)) : 0.0;
    case 4:
      return n > 3 ? double(n) * n *
                         ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2) /
                         ((n - 1.0) * (n - 2.0) * (n - 3.0))
                   : 0.0;
    case 5:
      return c.m[5] - 10.0 * m3 * m2;
    case 6:
      return c.m[6] - 15.0 * m4 * m2 - 10.0 * m3 * m3 + 30.0 * m2 * m2 * m2;
    default:
      throw std::invalid_argument("empirical_report: order must be <= 6");
  }
}

double cov_unbiased(const std::vector<std::vector<double>>& x, int a, int b,
                    double ma, double mb) {
  const int n = static_cast<int>(x.size());
  if (n < 2) return 0.0;
  double s = 0;
  for (const auto& row : x) s += (row[a] - ma) * (row[b] - mb);
  return s / (n - 1.0);
}

// One full report without standard errors.
MomentReport point_report(const std::vector<std::vector<double>>& x, int r) {
  MomentReport rep;
  rep.K = x.empty() ? 0 : static_cast<int>(x[0].size());
  rep.r = r;
  const int n = static_cast<int>(x.size());
  std::vector<Central> cen(rep.K);
  for (int k = 0; k < rep.K; ++k) cen[k] = central_moments(x, k, std::max(r, 2));
  for (int k = 0; k < rep.K; ++k) rep.mean.push_back(cen[k].mean);
  rep.cov.assign(rep.K, std::vector<double>(rep.K, 0.0));
  for (int a = 0; a < rep.K; ++a)
    for (int b = a; b < rep.K; ++b)
      rep.cov[a][b] = rep.cov[b][a] =
          cov_unbiased(x, a, b, cen[a].mean, cen[b].mean);
  for (int o = 3; o <= r; ++o) {
    std::vector<double> row;
    for (int k = 0; k < rep.K; ++k) row.push_back(cumulant_of(cen[k], n, o));
    rep.cum.push_back(std::move(row));
  }
  return rep;
}

}  // namespace

MomentReport empirical_report(const std::vector<std::vector<double>>& samples,
                              int r, int jackknife_blocks) {
  if (samples.empty()) throw std::invalid_argument("empirical_report: empty");
  if (r < 2 || r > 6)
    throw std::invalid_argument("empirical_report: order must be in 2..6");
  const int n = static_cast<int>(samples.size());
  for (const auto& row : samples)
    if (row.size() != samples[0].size())
      throw std::invalid_argument("empirical_report: ragged input");

  MomentReport rep = point_report(samples, r);

  // Delete-block jackknife: also valid under mild serial correlation when the
  // samples arrive in chain order.
  const int g = std::max(2, std::min(jackknife_blocks, n / 2));
  std::vector<MomentReport> del;
  del.reserve(g);
  for (int b = 0; b < g; ++b) {
    const int lo = static_cast<int>(static_cast<long long>(n) * b / g);
    const int hi = static_cast<int>(static_cast<long long>(n) * (b + 1) / g);
    std::vector<std::vector<double>> sub;
    sub.reserve(n - (hi - lo));
    for (int i = 0; i < n; ++i)
      if (i < lo || i >= hi) sub.push_back(samples[i]);
    del.push_back(point_report(sub, r));
  }
  auto se = [&](auto pick) {
    double mu = 0;
    for (const auto& d : del) mu += pick(d);
    mu /= g;
    double s = 0;
    for (const auto& d : del) {
      const double dv = pick(d) - mu;
      s += dv * dv;
    }
    return std::sqrt((g - 1.0) / g * s);
  };
  for (int k = 0; k < rep.K; ++k)
    rep.mean_se.push_back(se([&](const MomentReport& d) { return d.mean[k]; }));
  rep.cov_se.assign(rep.K, std::vector<double>(rep.K, 0.0));
  for (int a = 0; a < rep.K; ++a)
    for (int b = a; b < rep.K; ++b)
      rep.cov_se[a][b] = rep.cov_se[b][a] =
          se([&](const MomentReport& d) { return d.cov[a][b]; });
  for (size_t o = 0; o < rep.cum.size(); ++o) {
    std::vector<double> row;
    for (int k = 0; k < rep.K; ++k)
      row.push_back(se([&](const MomentReport& d) { return d.cum[o][k]; }));
    rep.cum_se.push_back(std::move(row));
  }
  return rep;
}

}  // namespace schurtile
