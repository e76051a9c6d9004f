#include "schurtile/qrw.hpp"

#include "schurtile/schur.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schurtile {

namespace {

bool is_row(const Signature& nu) {
  for (std::size_t i = 1; i < nu.size(); ++i)
    if (nu[i] != 0) return false;
  return !nu.empty() && nu[0] > 0;
}

bool is_column(const Signature& nu) {
  for (long part : nu)
    if (part != 0 && part != 1) return false;
  return !nu.empty() && nu[0] == 1;
}

Signature padded(Signature lam, int N) {
  lam.resize(N, 0);
  return lam;
}

// dim(lam + e_r) / dim(lam) in doubles, for the fast one-box walk.
double box_ratio(const Signature& lam, int N, int r) {
  double v = 1.0;
  for (int j = 0; j < N; ++j) {
    if (j == r) continue;
    const double base = static_cast<double>(lam[r] - lam[j] + j - r);
    v *= (base + 1.0) / base;
  }
  return v;
}

}  // namespace

void WalkSpec::validate() const {
  if (!is_partition(nu) || !(is_row(nu) || is_column(nu)))
    throw std::invalid_argument("WalkSpec: nu must be a single row or column");
  if (static_cast<long>(nu.size()) > N && is_column(nu))
    throw std::invalid_argument("WalkSpec: nu does not fit in N rows");
  if (N < 1 || steps < 0)
    throw std::invalid_argument("WalkSpec: bad N or step count");
  initial.validate();
  if (initial.components() != 1 || initial.N[0] != N)
    throw std::invalid_argument("WalkSpec: initial must be one GT_N measure");
}

std::vector<std::pair<Signature, Rat>> step_distribution(const Signature& lam,
                                                         const Signature& nu,
                                                         int N) {
  if (!is_signature(lam) || static_cast<long>(lam.size()) > N)
    throw std::invalid_argument("step_distribution: bad lambda");
  if (!is_partition(nu))
    throw std::invalid_argument("step_distribution: nu must be a partition");
  const long p = weight(nu);
  std::vector<Signature> mus;
  if (is_row(nu))
    mus = add_horizontal_strips(padded(lam, N), p, N);
  else if (is_column(nu))
    mus = add_vertical_strips(padded(lam, N), p, N);
  else
    throw std::invalid_argument(
        "step_distribution: only single-row or single-column nu supported");
  const Rat denom = schur_dim(lam, N) * schur_dim(nu, N);
  std::vector<std::pair<Signature, Rat>> out;
  Rat total(0);
  for (auto& mu : mus) {
    Rat pr = schur_dim(mu, N) / denom;  // Pieri: multiplicity one
    total += pr;
    out.emplace_back(std::move(mu), std::move(pr));
  }
  if (total != 1)
    throw std::logic_error("step_distribution: probabilities do not sum to 1");
  return out;
}

std::vector<Signature> walk_sample(const WalkSpec& spec, PhiloxRng& rng) {
  spec.validate();
  // Draw the initial signature.
  Signature cur;
  {
    double u = rng.u01();
    for (const auto& [sigs, w] : spec.initial.atoms) {
      u -= Rat(w).get_d();
      cur = sigs[0];
      if (u <= 0) break;
    }
  }
  cur = padded(cur, spec.N);
  std::vector<Signature> traj;
  traj.reserve(spec.steps + 1);
  traj.push_back(cur);
  const bool one_box = weight(spec.nu) == 1;
  std::vector<double> w(spec.N);
  for (long s = 0; s < spec.steps; ++s) {
    if (one_box) {
      double total = 0;
      for (int r = 0; r < spec.N; ++r) {
        const bool ok = r == 0 || cur[r] < cur[r - 1];
        w[r] = ok ? box_ratio(cur, spec.N, r) : 0.0;
        total += w[r];
      }
      double u = rng.u01() * total;
      int r = 0;
      for (; r + 1 < spec.N; ++r) {
        u -= w[r];
        if (u <= 0) break;
      }
      while (w[r] == 0.0) --r;  // guard against fp drift onto a dead row
      ++cur[r];
    } else {
      auto dist = step_distribution(cur, spec.nu, spec.N);
      double u = rng.u01();
      for (auto& [mu, pr] : dist) {
        u -= pr.get_d();
        cur = mu;
        if (u <= 0) break;
      }
      cur = padded(cur, spec.N);
    }
    traj.push_back(cur);
  }
  return traj;
}

Rat app_cov(const GermData& germ0, long nu_boxes, const Rat& ti, const Rat& tj,
            int ki, int kj, int ch) {
  germ0.validate();
  if (ch < 0 || ch >= germ0.channels())
    throw std::invalid_argument("app_cov: bad channel");
  if (nu_boxes < 1) throw std::invalid_argument("app_cov: need |nu| >= 1");
  if (ti < 0 || tj < ti)
    throw std::invalid_argument("app_cov: need 0 <= t_i <= t_j");
  if (germ0.K < 1) throw std::invalid_argument("app_cov: K >= 1 required");
  // The centered observables are martingales in the limit, so the two-time
  // covariance is the equal-time one at the earlier time: every insertion
  // carries t_i.  (Monte Carlo at N = 20, 40 pins this reading down.)
  GermData g1 = GermData::zero(1, germ0.K);
  g1.c[0] = germ0.c[ch];
  g1.c[0][0] += ti * Rat(nu_boxes);
  g1.d[0][0] = germ0.d[ch][ch];
  g1.d[0][0][0][0] -= ti * Rat(nu_boxes);
  return forward_cov(g1, 0, ki, 0, kj);
}

std::vector<std::pair<int, Rat>> lemapp_check(const Signature& lam,
                                              const std::vector<int>& multi,
                                              int Nmin, int Nmax) {
  if (!is_partition(lam))
    throw std::invalid_argument("lemapp_check: lam must be a partition");
  if (multi.empty()) throw std::invalid_argument("lemapp_check: empty index");
  const int r = static_cast<int>(multi.size());
  std::vector<std::pair<int, Rat>> out;
  for (int N = std::max<int>(Nmin, std::max<std::size_t>(lam.size(), multi.size()));
       N <= Nmax; ++N) {
    FiniteMeasure rho = FiniteMeasure::delta(padded(lam, N));
    Rat v = sgf_log_derivs(rho, {multi});
    out.emplace_back(N, rat_pow(Rat(N), r) * v);
  }
  return out;
}

}  // namespace schurtile
