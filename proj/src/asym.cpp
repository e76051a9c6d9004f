#include "schurtile/asym.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace schurtile {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Small dense complex solver (partial pivoting), n <= a handful.
std::vector<Cplx> solve_dense(std::vector<Cplx> a, std::vector<Cplx> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) == 0.0)
      throw std::runtime_error("solve_dense: singular system");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      Cplx f = a[r * n + col] / a[col * n + col];
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Cplx> x(n);
  for (int r = n - 1; r >= 0; --r) {
    Cplx s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
    x[r] = s / a[r * n + r];
  }
  return x;
}

const std::vector<double>& gl12_x() {
  static std::vector<double> x, w;
  if (x.empty()) gauss_legendre(12, x, w);
  return x;
}
const std::vector<double>& gl12_w() {
  static std::vector<double> x, w;
  if (w.empty()) gauss_legendre(12, x, w);
  return w;
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double pm = 0.0, p = 1.0;
      for (int j = 0; j < n; ++j) {
        double t = p;
        p = ((2 * j + 1) * x * p - j * pm) / (j + 1);
        pm = t;
      }
      pp = n * (x * p - pm) / (x * x - 1.0);
      double dx = p / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

void Bands::validate() const {
  if (alpha.size() != beta.size() || alpha.empty())
    throw std::invalid_argument("Bands: need matching nonempty endpoint lists");
  double prev = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < alpha.size(); ++k) {
    if (!(prev < alpha[k] && alpha[k] < beta[k]))
      throw std::invalid_argument("Bands: endpoints not strictly interleaved");
    prev = beta[k];
  }
}

// ---------------------------------------------------------------- density

void DensityModel::finish() {
  const int n = static_cast<int>(x_.size());
  slope_.assign(n, 0.0);
  if (n >= 2) {
    std::vector<double> d(n - 1);
    for (int i = 0; i + 1 < n; ++i)
      d[i] = (f_[i + 1] - f_[i]) / (x_[i + 1] - x_[i]);
    slope_[0] = d[0];
    slope_[n - 1] = d[n - 2];
    // Fritsch-Butland harmonic-mean slopes: monotone interpolant guaranteed.
    for (int i = 1; i + 1 < n; ++i)
      slope_[i] = (d[i - 1] * d[i] > 0.0)
                      ? 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i])
                      : 0.0;
  }
  mass_ = f_.back() - f_.front();
}

DensityModel DensityModel::from_samples(
    const std::vector<std::vector<double>>& samples, double scale,
    double bandwidth) {
  if (samples.empty() || scale <= 0)
    throw std::invalid_argument("from_samples: bad input");
  double h = bandwidth > 0 ? bandwidth : 2.0 / scale;
  std::vector<double> pool;
  for (const auto& row : samples) pool.insert(pool.end(), row.begin(), row.end());
  if (pool.empty()) throw std::invalid_argument("from_samples: no particles");
  std::sort(pool.begin(), pool.end());
  const double lo = pool.front() - h, hi = pool.back() + h;
  const double step = h / 2.0;
  const int ncell = std::max(2, static_cast<int>(std::ceil((hi - lo) / step)));
  DensityModel d;
  d.h_ = (hi - lo) / ncell;
  const double nrows = static_cast<double>(samples.size());
  for (int i = 0; i <= ncell; ++i) {
    double x = lo + (hi - lo) * i / ncell;
    auto it = std::upper_bound(pool.begin(), pool.end(), x);
    d.x_.push_back(x);
    d.f_.push_back(static_cast<double>(it - pool.begin()) / (nrows * scale));
  }
  d.finish();
  return d;
}

DensityModel DensityModel::from_density(const std::function<double(double)>& mu,
                                        double lo, double hi, int grid) {
  if (!(lo < hi) || grid < 2)
    throw std::invalid_argument("from_density: bad input");
  DensityModel d;
  d.h_ = (hi - lo) / grid;
  double acc = 0.0;
  d.x_.push_back(lo);
  d.f_.push_back(0.0);
  for (int i = 0; i < grid; ++i) {
    double a = lo + (hi - lo) * i / grid, b = lo + (hi - lo) * (i + 1) / grid;
    // Composite Simpson on 8 subintervals of the cell.
    double s = 0.0;
    const int ns = 8;
    for (int j = 0; j < ns; ++j) {
      double u = a + (b - a) * j / ns, v = a + (b - a) * (j + 1) / ns;
      s += (v - u) / 6.0 * (mu(u) + 4.0 * mu(0.5 * (u + v)) + mu(v));
    }
    acc += s;
    d.x_.push_back(b);
    d.f_.push_back(acc);
  }
  d.finish();
  // Exact densities are available here; prefer them to difference slopes.
  for (size_t i = 0; i < d.x_.size(); ++i)
    d.slope_[i] = std::max(0.0, mu(d.x_[i]));
  return d;
}

double DensityModel::density(double x) const {
  if (x <= x_.front() || x >= x_.back()) return 0.0;
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  double L = x_[i + 1] - x_[i], t = (x - x_[i]) / L;
  double v = (f_[i] * (6 * t * t - 6 * t) + L * slope_[i] * (3 * t * t - 4 * t + 1) +
              f_[i + 1] * (6 * t - 6 * t * t) + L * slope_[i + 1] * (3 * t * t - 2 * t)) /
             L;
  return std::max(0.0, v);
}

Cplx DensityModel::stieltjes(Cplx z) const {
  const double tol = 1e-9 * (1.0 + std::abs(z));
  Cplx sum = 0.0;
  static std::vector<double> g4x, g4w;
  if (g4x.empty()) gauss_legendre(4, g4x, g4w);
  for (size_t i = 0; i + 1 < x_.size(); ++i) {
    if (f_[i + 1] == f_[i] && slope_[i] == 0.0 && slope_[i + 1] == 0.0) continue;
    double a = x_[i], b = x_[i + 1], len = b - a;
    double cx = std::clamp(z.real(), a, b);
    double dist = std::abs(z - Cplx(cx, 0.0));
    if (dist < tol)
      throw std::domain_error("DensityModel::stieltjes: z too close to support");
    int ns = dist >= 2.0 * len
                 ? 1
                 : std::min(64, static_cast<int>(std::ceil(2.0 * len / dist)));
    for (int s = 0; s < ns; ++s) {
      double u = a + len * s / ns, v = a + len * (s + 1) / ns;
      for (size_t q = 0; q < g4x.size(); ++q) {
        double xq = 0.5 * (u + v) + 0.5 * (v - u) * g4x[q];
        sum += 0.5 * (v - u) * g4w[q] * density(xq) / (z - xq);
      }
    }
  }
  return sum;
}

Cplx empirical_stieltjes(const std::vector<std::vector<long>>& samples, long L,
                         Cplx z) {
  if (samples.empty() || L <= 0)
    throw std::invalid_argument("empirical_stieltjes: bad input");
  Cplx acc = 0.0;
  for (const auto& row : samples) {
    Cplx s = 0.0;
    for (long p : row) s += 1.0 / (z - Cplx(double(p) / double(L), 0.0));
    acc += s / double(L);
  }
  return acc / double(samples.size());
}

Bands detect_bands(const DensityModel& d, double eps, int expect) {
  const auto& g = d.grid();
  const int nc = static_cast<int>(g.size()) - 1;
  std::vector<char> liq(nc, 0);
  for (int i = 0; i < nc; ++i) {
    double mu = d.density(0.5 * (g[i] + g[i + 1]));
    liq[i] = (mu > eps && mu < 1.0 - eps) ? 1 : 0;
  }
  // Merge liquid runs separated by at most 2 cells; drop runs under 3 cells.
  std::vector<std::pair<int, int>> runs;
  for (int i = 0; i < nc;) {
    if (!liq[i]) { ++i; continue; }
    int j = i;
    while (j < nc && liq[j]) ++j;
    if (!runs.empty() && i - runs.back().second <= 2)
      runs.back().second = j;
    else
      runs.push_back({i, j});
    i = j;
  }
  Bands b;
  for (auto [i, j] : runs) {
    if (j - i < 3) continue;
    b.alpha.push_back(g[i]);
    b.beta.push_back(g[j]);
  }
  if (expect >= 0 && static_cast<int>(b.alpha.size()) != expect) {
    std::ostringstream os;
    os << "detect_bands: expected " << expect << " bands, found "
       << b.alpha.size() << ":";
    for (size_t k = 0; k < b.alpha.size(); ++k)
      os << " [" << b.alpha[k] << ", " << b.beta[k] << "]";
    throw std::runtime_error(os.str());
  }
  b.validate();
  return b;
}

// ----------------------------------------------------------------- kernel

CovKernel::CovKernel(Bands bands, int quad_pts) : bands_(std::move(bands)) {
  bands_.validate();
  npts_ = std::max(8, quad_pts);
  gauss_legendre(12, gl_x_, gl_w_);
  const int K = bands_.K();
  scale_ = std::max({1.0, std::abs(bands_.alpha.front()),
                     std::abs(bands_.beta.back())});
  const int nang = std::max(128, 4 * npts_);
  cn_.resize(K);
  cw_.resize(K);
  em_.resize(K);
  ea_.resize(K);
  eb_.resize(K);
  for (int k = 0; k < K; ++k) {
    double m = 0.5 * (bands_.alpha[k] + bands_.beta[k]);
    double r = 0.5 * (bands_.beta[k] - bands_.alpha[k]);
    // Keep the contour well inside the gaps: the Green-function paths cross
    // gaps near their midpoints and must stay outside these ellipses.
    double cl = 0.5 * r;
    if (k > 0) cl = std::min(cl, 0.25 * (bands_.alpha[k] - bands_.beta[k - 1]));
    if (k + 1 < K)
      cl = std::min(cl, 0.25 * (bands_.alpha[k + 1] - bands_.beta[k]));
    em_[k] = m;
    ea_[k] = r + cl;
    eb_[k] = cl;
    for (int j = 0; j < nang; ++j) {
      double th = 2.0 * kPi * j / nang;
      cn_[k].push_back(Cplx(m + ea_[k] * std::cos(th), eb_[k] * std::sin(th)));
      cw_[k].push_back(Cplx(-ea_[k] * std::sin(th), eb_[k] * std::cos(th)) *
                       (2.0 * kPi / nang));
    }
  }
  period_.assign(K, std::vector<Cplx>(std::max(0, K - 1), Cplx(0)));
  for (int k = 0; k < K; ++k)
    for (int d = 0; d + 1 < K; ++d) {
      Cplx s = 0.0;
      for (size_t j = 0; j < cn_[k].size(); ++j)
        s += cw_[k][j] * std::pow(cn_[k][j], d) / sq(cn_[k][j]);
      period_[k][d] = s;
    }
  // Self-diagnostic: residual of the period conditions at a generic point.
  Cplx z0(em_[0] + 0.37 * scale_, 1.1 * scale_);
  auto c = cpoly(z0);
  auto b = band_b(z0);
  double res = 0.0;
  for (int k = 0; k < K; ++k) {
    Cplx r = b[k];
    for (int d = 0; d + 1 < K; ++d) r += c[d] * period_[k][d];
    res = std::max(res, std::abs(r));
  }
  period_residual_ = res;
}

Cplx CovKernel::sq(Cplx w) const {
  Cplx out = 1.0;
  for (int k = 0; k < bands_.K(); ++k) {
    double m = 0.5 * (bands_.alpha[k] + bands_.beta[k]);
    double r = 0.5 * (bands_.beta[k] - bands_.alpha[k]);
    Cplx d = w - m;
    if (std::abs(d) < 1e-300) return 0.0;
    Cplx t = r / d;
    out *= d * std::sqrt(1.0 - t * t);
  }
  return out;
}

// Periods in w of the z-dependent part of the kernel: the rational term
// -1/(2(w-z)^2) has exact zero period, so only the sq(z)/sq(w) piece is
// integrated.  Contours are refined toward the nearest point when z sits
// close to them.
std::vector<Cplx> CovKernel::band_b(Cplx z) const {
  const int K = bands_.K();
  Cplx sz = sq(z);
  Cplx Lz = 0.0;
  for (int k = 0; k < K; ++k)
    Lz += 1.0 / (z - bands_.alpha[k]) + 1.0 / (z - bands_.beta[k]);
  auto S = [&](Cplx w) {
    Cplx u = z - w;
    return sz / (2.0 * sq(w)) * (1.0 / (u * u) - 0.5 * Lz / u);
  };
  // Integral of S over the ellipse (m, A, B), graded toward the angle
  // closest to z when z sits near the contour.
  auto integrate_ellipse = [&](int k, double A, double B, double dmin,
                               double th0) -> Cplx {
    const double m = em_[k];
    if (dmin > 0.12 * A && A == ea_[k]) {
      Cplx s = 0.0;
      for (size_t j = 0; j < cn_[k].size(); ++j) s += cw_[k][j] * S(cn_[k][j]);
      return s;
    }
    double e0 = dmin > 0.12 * A ? 0.2 : std::max(0.25 * dmin / A, 1e-7);
    std::vector<double> bp{0.0};
    for (double o = e0; o < kPi; o *= 1.7) bp.push_back(std::min(o, kPi));
    if (bp.back() < kPi) bp.push_back(kPi);
    // Cap panel length: far panels must still resolve the ellipse itself.
    for (size_t p = 0; p + 1 < bp.size(); ++p)
      if (bp[p + 1] - bp[p] > 0.2) {
        int ns = static_cast<int>(std::ceil((bp[p + 1] - bp[p]) / 0.2));
        double a0 = bp[p], b0 = bp[p + 1];
        for (int s = 1; s < ns; ++s)
          bp.insert(bp.begin() + p + s, a0 + (b0 - a0) * s / ns);
        p += ns - 1;
      }
    Cplx s = 0.0;
    for (int sgn : {-1, 1})
      for (size_t p = 0; p + 1 < bp.size(); ++p) {
        double a = th0 + sgn * bp[p], b = th0 + sgn * bp[p + 1];
        if (a > b) std::swap(a, b);  // keep counterclockwise orientation
        for (size_t q = 0; q < gl_x_.size(); ++q) {
          double th = 0.5 * (a + b) + 0.5 * (b - a) * gl_x_[q];
          Cplx w(m + A * std::cos(th), B * std::sin(th));
          Cplx dw(-A * std::sin(th), B * std::cos(th));
          s += 0.5 * (b - a) * gl_w_[q] * dw * S(w);
        }
      }
    return s;
  };
  std::vector<Cplx> out(K, Cplx(0));
  const int nang = 128;
  for (int k = 0; k < K; ++k) {
    const double cl = eb_[k], r = ea_[k] - cl;
    // The integrand has a pole at w = z with zero total residue, so any
    // contour enclosing the band gives the same period; pick the scale in
    // {1, 0.55, 0.3} of the default clearance that stays farthest from z.
    double bestA = ea_[k], bestB = eb_[k], bestD = -1.0, bestTh = 0.0;
    for (double s : {1.0, 0.55, 0.3}) {
      double A = r + s * cl, B = s * cl;
      double dmin = 1e300, th0 = 0.0;
      for (int j = 0; j < nang; ++j) {
        double th = 2.0 * kPi * j / nang;
        double d = std::abs(z - Cplx(em_[k] + A * std::cos(th),
                                     B * std::sin(th)));
        if (d < dmin) { dmin = d; th0 = th; }
      }
      if (s == 1.0 && dmin > 0.15 * cl) { bestA = A; bestB = B; bestD = dmin;
                                          bestTh = th0; break; }
      if (dmin > bestD) { bestA = A; bestB = B; bestD = dmin; bestTh = th0; }
    }
    out[k] = integrate_ellipse(k, bestA, bestB, bestD, bestTh);
  }
  return out;
}

std::vector<Cplx> CovKernel::cpoly(Cplx z) const {
  const int K = bands_.K();
  if (K == 1) return {};
  if (z == cz_) return cc_;
  auto b = band_b(z);
  const int n = K - 1;
  // Least squares over the K one-dependent conditions: normal equations.
  std::vector<Cplx> A(n * n, Cplx(0)), rhs(n, Cplx(0));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int k = 0; k < K; ++k)
        A[r * n + c] += std::conj(period_[k][r]) * period_[k][c];
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < K; ++k) rhs[r] -= std::conj(period_[k][r]) * b[k];
  cc_ = solve_dense(std::move(A), std::move(rhs));
  cz_ = z;
  return cc_;
}

Cplx CovKernel::base(Cplx z, Cplx w) const {
  Cplx u = z - w;
  const int K = bands_.K();
  bool same_sheet = (z.imag() >= 0) == (w.imag() >= 0);
  if (!same_sheet) {
    double mr = 0.5 * (z.real() + w.real());
    bool over_band = false;
    for (int k = 0; k < K; ++k)
      if (mr >= bands_.alpha[k] && mr <= bands_.beta[k]) over_band = true;
    same_sheet = !over_band;
  }
  if (std::abs(u) < 1e-4 * scale_ && same_sheet) {
    // Diagonal expansion: the kernel's rational singularity cancels against
    // the square-root ratio; direct evaluation loses precision here.
    Cplx p1 = 0.0, p2 = 0.0, p3 = 0.0;
    for (int k = 0; k < K; ++k)
      for (double g : {bands_.alpha[k], bands_.beta[k]}) {
        Cplx r = 1.0 / (z - g);
        p1 += 0.5 * r;
        p2 -= 0.5 * r * r;
        p3 += r * r * r;
      }
    return -(p1 * p1 + p2) / 4.0 + u * (p3 / 12.0 - p1 * p1 * p1 / 6.0);
  }
  Cplx Lz = 0.0;
  for (int k = 0; k < K; ++k)
    Lz += 1.0 / (z - bands_.alpha[k]) + 1.0 / (z - bands_.beta[k]);
  return -0.5 / (u * u) +
         sq(z) / (2.0 * sq(w)) * (1.0 / (u * u) - 0.5 * Lz / u);
}

Cplx CovKernel::operator()(Cplx z, Cplx w) const {
  Cplx v = base(z, w);
  const auto c = cpoly(z);
  if (!c.empty()) {
    Cplx sw = sq(w);
    for (size_t d = 0; d < c.size(); ++d) v += c[d] * std::pow(w, d) / sw;
  }
  return v;
}

Cplx CovKernel::band_period(Cplx z, int k) const {
  auto b = band_b(z);
  auto c = cpoly(z);
  Cplx s = b[k];
  for (size_t d = 0; d < c.size(); ++d) s += c[d] * period_[k][d];
  return s;
}

// ------------------------------------------------------------------ green

GreenFunction::GreenFunction(Bands bands, int path_pts)
    : kern_(std::move(bands)) {
  npts_ = std::max(6, path_pts);
  gauss_legendre(std::min(npts_, 12), gl_x_, gl_w_);
  base_y_ = 1.0 + std::max(std::abs(kern_.bands().alpha.front()),
                           std::abs(kern_.bands().beta.back()));
}

std::vector<Cplx> GreenFunction::path(Cplx a, double off) const {
  if (a.imag() < 0.0) {
    auto p = path(std::conj(a), off);
    std::reverse(p.begin(), p.end());
    return p;
  }
  if (a.imag() == 0.0) throw std::invalid_argument("GreenFunction::path: real a");
  const auto& B = kern_.bands();
  const int K = B.K();
  // Gap crossing candidates: outer rays plus interior gap midpoints.
  std::vector<std::pair<double, double>> cand;  // (crossing, half-width)
  cand.push_back({B.alpha.front() - 0.6 * base_y_, 0.6 * base_y_});
  for (int k = 0; k + 1 < K; ++k)
    cand.push_back({0.5 * (B.beta[k] + B.alpha[k + 1]),
                    0.5 * (B.alpha[k + 1] - B.beta[k])});
  cand.push_back({B.beta.back() + 0.6 * base_y_, 0.6 * base_y_});
  size_t best = 0;
  for (size_t i = 1; i < cand.size(); ++i)
    if (std::abs(a.real() - cand[i].first) <
        std::abs(a.real() - cand[best].first))
      best = i;
  double g = cand[best].first + off * 0.5 * cand[best].second;
  g = std::clamp(g, cand[best].first - 0.6 * cand[best].second,
                 cand[best].first + 0.6 * cand[best].second);
  const double h = 0.6 * base_y_;
  std::vector<Cplx> p;
  p.push_back(std::conj(a));
  if (std::abs(a.real() - g) > 1e-12 * base_y_) {
    p.push_back(Cplx(a.real(), -h));
    p.push_back(Cplx(g, -h));
    p.push_back(Cplx(g, h));
    p.push_back(Cplx(a.real(), h));
  }
  p.push_back(a);
  return p;
}

void GreenFunction::segment_nodes(Cplx p, Cplx q, double grade_floor,
                                  std::vector<Cplx>& nodes,
                                  std::vector<Cplx>& wts) const {
  const double len = std::abs(q - p);
  if (len < 1e-15 * base_y_) return;
  const Cplx dir = (q - p) / len;
  // Find where the segment comes closest to the real axis; grade toward it.
  double ip = p.imag(), iq = q.imag();
  double tstar = -1.0, imin = std::min(std::abs(ip), std::abs(iq));
  if (ip * iq < 0.0) {
    tstar = len * std::abs(ip) / (std::abs(ip) + std::abs(iq));
    imin = 0.0;
  } else {
    tstar = std::abs(ip) <= std::abs(iq) ? 0.0 : len;
  }
  std::vector<double> bp;
  if (imin > 0.1 * base_y_) {
    int np = std::max(1, static_cast<int>(std::ceil(len / (0.7 * base_y_))));
    for (int i = 0; i <= np; ++i) bp.push_back(len * i / np);
  } else {
    double f0 = std::max({grade_floor, imin, 1e-7 * base_y_});
    bp.push_back(0.0);
    bp.push_back(len);
    if (tstar > 0.0 && tstar < len) bp.push_back(tstar);
    for (double o = f0; o < len; o *= 3.0) {
      if (tstar - o > 0.0) bp.push_back(tstar - o);
      if (tstar + o < len) bp.push_back(tstar + o);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  }
  for (size_t i = 0; i + 1 < bp.size(); ++i) {
    double a = bp[i], b = bp[i + 1];
    for (size_t qd = 0; qd < gl_x_.size(); ++qd) {
      double t = 0.5 * (a + b) + 0.5 * (b - a) * gl_x_[qd];
      nodes.push_back(p + dir * t);
      wts.push_back(dir * (0.5 * (b - a) * gl_w_[qd]));
    }
  }
}

// The double integral collapses to 1D integrals: the z-dependent part of the
// kernel is an exact derivative, sq(z)/(2 sq(w)) (1/u^2 - phi'(z)/u) =
// -(1/2) d/dz [sq(z) / ((z-w) sq(w))] with u = z-w, so the inner integral
// only sees the endpoints of pz; the c-polynomial term factorizes.
GreenFunction::ZReduction GreenFunction::reduce_z(const std::vector<Cplx>& pz,
                                                  double grade_floor) const {
  std::vector<Cplx> nz, wz;
  for (size_t i = 0; i + 1 < pz.size(); ++i)
    segment_nodes(pz[i], pz[i + 1], grade_floor, nz, wz);
  ZReduction zr;
  zr.za = pz.front();
  zr.zb = pz.back();
  zr.sqa = kern_.sq(zr.za);
  zr.sqb = kern_.sq(zr.zb);
  zr.C.assign(std::max(0, kern_.bands_.K() - 1), Cplx(0));
  for (size_t i = 0; i < nz.size(); ++i) {
    auto c = kern_.cpoly(nz[i]);
    for (size_t d = 0; d < zr.C.size(); ++d) zr.C[d] += wz[i] * c[d];
  }
  return zr;
}

Cplx GreenFunction::integrate_w(const std::vector<Cplx>& pw, double grade_floor,
                                const ZReduction& zr) const {
  std::vector<Cplx> nw, ww;
  for (size_t i = 0; i + 1 < pw.size(); ++i)
    segment_nodes(pw[i], pw[i + 1], grade_floor, nw, ww);
  Cplx J = 0.0;
  std::vector<Cplx> P(zr.C.size(), Cplx(0));
  for (size_t j = 0; j < nw.size(); ++j) {
    Cplx w = nw[j];
    Cplx sw = kern_.sq(w);
    Cplx t = 0.5 * (1.0 / (zr.zb - w) - 1.0 / (zr.za - w)) -
             0.5 * (zr.sqb / (zr.zb - w) - zr.sqa / (zr.za - w)) / sw;
    J += ww[j] * t;
    Cplx wp = 1.0;
    for (size_t d = 0; d < P.size(); ++d) {
      P[d] += ww[j] * wp / sw;
      wp *= w;
    }
  }
  for (size_t d = 0; d < zr.C.size(); ++d) J += zr.C[d] * P[d];
  return J;
}

Cplx GreenFunction::path_integral2(const std::vector<Cplx>& pz,
                                   const std::vector<Cplx>& pw,
                                   double grade_floor) const {
  if (grade_floor <= 0.0) grade_floor = 1e-7 * base_y_;
  return integrate_w(pw, grade_floor, reduce_z(pz, grade_floor));
}

double GreenFunction::operator()(Cplx z, Cplx w) const {
  const auto& B = kern_.bands();
  auto in_band = [&](double x) {
    for (int k = 0; k < B.K(); ++k)
      if (x >= B.alpha[k] - 1e-12 && x <= B.beta[k] + 1e-12) return true;
    return false;
  };
  if (z.imag() < 0.0 || (z.imag() == 0.0 && w.imag() < 0.0)) {
    z = std::conj(z);
    w = std::conj(w);
  }
  const double delta = 1e-7 * base_y_;
  if (z.imag() == 0.0) {
    if (!in_band(z.real())) return 0.0;
    z += Cplx(0.0, delta);
  }
  if (w.imag() == 0.0) {
    if (!in_band(w.real())) return 0.0;
    w += Cplx(0.0, delta);
  }
  if (std::abs(z - w) < 1e-13 * base_y_)
    throw std::domain_error("GreenFunction: z == w (logarithmic singularity)");
  // Resolution scale along the paths: the kernel varies near the diagonal
  // and near band endpoints; band interiors impose no small scale.
  double depz = 1e300, depw = 1e300;
  for (int k = 0; k < B.K(); ++k)
    for (double g : {B.alpha[k], B.beta[k]}) {
      depz = std::min(depz, std::abs(z.real() - g));
      depw = std::min(depw, std::abs(w.real() - g));
    }
  // z-side nodes only see the smooth c-polynomials, so their floor is
  // w-independent and the reduction can be reused across w.
  double gz = std::max(1e-7 * base_y_, 0.05 * depz);
  double gw = std::max(1e-7 * base_y_,
                       0.05 * std::min(std::abs(z - w), std::min(depz, depw)));
  if (z != zcache_key_ || gz != zcache_floor_) {
    zcache_ = reduce_z(path(z, 0.35), gz);
    zcache_key_ = z;
    zcache_floor_ = gz;
  }
  Cplx J = integrate_w(path(w, -0.35), gw, zcache_);
  if (w.imag() > 0.0)
    return -J.real() / (4.0 * kPi) -
           std::log(std::abs((z - w) / (z - std::conj(w)))) / (2.0 * kPi);
  return J.real() / (4.0 * kPi);
}

// ------------------------------------------------------- critical equations

namespace {

// The side equation, expressed so that the sought root always lies in the
// upper half-plane (the right side's natural root is the conjugate).
struct SideEq {
  const SlopeModel* m;
  Side side;
  double x, y;
  Cplx operator()(Cplx z) const {
    const double tau = m->tau;
    if (side == Side::Left) {
      Cplx G = m->left.stieltjes(z / tau);
      if (m->family == TileFamily::Hexagon)
        return z + (tau - x) / (std::exp(-G) - 1.0) - y;
      return z - (tau - x) / std::sinh(G) - y;
    }
    if (m->family == TileFamily::Hexagon) {
      Cplx u = (m->Ahat + m->Bhat - z) / (m->Bhat + m->Chat - tau);
      Cplx G = m->right.stieltjes(u);
      return z + (tau - x) / (std::exp(-G) - 1.0) - y;
    }
    Cplx u = (m->Ahat - z) / (m->Bhat - tau);
    Cplx G = m->right.stieltjes(u);
    return z - (tau - x) / std::sinh(G) - y;
  }
};

std::optional<Cplx> newton_root(const SideEq& F, double rlo, double rhi,
                                double W) {
  auto eval = [&](Cplx z, Cplx& out) {
    try {
      out = F(z);
    } catch (const std::exception&) {
      return false;
    }
    return std::isfinite(out.real()) && std::isfinite(out.imag());
  };
  const double ftol = 1e-11 * W;
  // The equation usually has real roots besides the physical upper-half-plane
  // one, and Newton happily converges to them; scan every start and keep the
  // root farthest from the axis.
  std::optional<Cplx> best;
  for (double im : {0.03, 0.1, 0.3, 0.8}) {
    for (int s = 0; s <= 6; ++s) {
      Cplx z(rlo + (rhi - rlo) * s / 6.0, im * W);
      Cplx fz;
      if (!eval(z, fz)) continue;
      bool ok = true;
      for (int it = 0; it < 80 && ok; ++it) {
        if (std::abs(fz) < ftol) break;
        double h = 1e-7 * (1.0 + std::abs(z));
        Cplx fp, fm;
        if (!eval(z + h, fp) || !eval(z - h, fm)) { ok = false; break; }
        Cplx dz = fz / ((fp - fm) / (2.0 * h));
        double gam = 1.0;
        Cplx z2, f2;
        bool moved = false;
        for (int half = 0; half < 30; ++half, gam *= 0.5) {
          z2 = z - gam * dz;
          if (z2.imag() <= 1e-14 * W) continue;
          if (!eval(z2, f2)) continue;
          if (std::abs(f2) < std::abs(fz)) { moved = true; break; }
        }
        if (!moved) { ok = false; break; }
        bool stalled = std::abs(z2 - z) < 1e-13 * (1.0 + std::abs(z));
        z = z2;
        fz = f2;
        if (stalled) break;
        // Sinking to a real root: abandon this start early (points with
        // Im below the liquid tolerance are classified frozen anyway).
        if (z.imag() < 1e-6 * W) { ok = false; break; }
      }
      if (ok && std::abs(fz) < ftol && z.imag() > 1e-7 * W &&
          (!best || z.imag() > best->imag()))
        best = z;
    }
    if (best && best->imag() > 1e-3 * W) break;
  }
  return best;
}

// Winding number of F around the rectangle (argument-principle fallback).
double root_count(const SideEq& F, double rlo, double rhi, double ilo,
                  double ihi) {
  std::vector<Cplx> corners{Cplx(rlo, ilo), Cplx(rhi, ilo), Cplx(rhi, ihi),
                            Cplx(rlo, ihi), Cplx(rlo, ilo)};
  double wind = 0.0;
  Cplx prev;
  bool have_prev = false;
  for (size_t e = 0; e + 1 < corners.size(); ++e) {
    for (int j = 0; j <= 40; ++j) {
      Cplx zt = corners[e] + (corners[e + 1] - corners[e]) * (double(j) / 40.0);
      Cplx fv;
      try {
        fv = F(zt);
      } catch (const std::exception&) {
        have_prev = false;
        continue;
      }
      if (have_prev) wind += std::arg(fv / prev);
      prev = fv;
      have_prev = true;
    }
  }
  return wind / (2.0 * kPi);
}

}  // namespace

std::optional<Cplx> solve_slope(const SlopeModel& m, Side side, double x,
                                double y) {
  const double W = std::max({1.0, m.ymax(), m.width()});
  double rlo, rhi;
  if (side == Side::Left) {
    rlo = m.tau * m.left.lo() - 0.3 * W;
    rhi = m.tau * m.left.hi() + 0.3 * W;
  } else {
    rlo = -0.3 * W;
    rhi = m.ymax() + 0.3 * W;
  }
  SideEq F{&m, side, x, y};
  auto z = newton_root(F, rlo, rhi, W);
  if (!z) {
    double n = root_count(F, rlo, rhi, 1e-5 * W, 1.6 * W);
    if (std::abs(n) < 0.5) return std::nullopt;  // frozen
    // One root the grid missed: bisect the box by winding count.
    double a = rlo, b = rhi, c = 1e-5 * W, d = 1.6 * W;
    for (int it = 0; it < 24; ++it) {
      if (b - a > d - c) {
        double mid = 0.5 * (a + b);
        if (std::abs(root_count(F, a, mid, c, d)) > 0.5) b = mid; else a = mid;
      } else {
        double mid = 0.5 * (c + d);
        if (std::abs(root_count(F, a, b, c, mid)) > 0.5) d = mid; else c = mid;
      }
    }
    z = newton_root(F, a, b, W);
    if (!z) return std::nullopt;
  }
  if (side == Side::Right) return std::conj(*z);
  return z;
}

std::optional<Cplx> complex_slope(const SlopeModel& m, double x, double y) {
  const double tau = m.tau;
  if (x <= tau) {
    auto z = solve_slope(m, Side::Left, x, y);
    if (!z) return std::nullopt;
    Cplx G = m.left.stieltjes(*z / tau);
    return m.family == TileFamily::Hexagon ? std::exp(-G) - 1.0 : std::exp(-G);
  }
  auto zt = solve_slope(m, Side::Right, x, y);
  if (!zt) return std::nullopt;
  if (m.family == TileFamily::Hexagon) return (tau - x) / (y - *zt);
  Cplx u = (m.Ahat - *zt) / (m.Bhat - tau);
  return std::exp(-m.right.stieltjes(u));
}

std::optional<Cplx> uniformize(const SlopeModel& m, double x, double y) {
  if (std::abs(x - m.tau) <= 1e-9) {
    for (int k = 0; k < m.bands.K(); ++k)
      if (y >= m.bands.alpha[k] && y <= m.bands.beta[k]) return Cplx(y, 0.0);
    return std::nullopt;
  }
  return solve_slope(m, x < m.tau ? Side::Left : Side::Right, x, y);
}

std::vector<std::pair<double, double>> liquid_slice(const SlopeModel& m,
                                                    double x, int ngrid) {
  const double ym = m.ymax();
  std::vector<double> ys;
  std::vector<char> liq;
  for (int j = 1; j < ngrid; ++j) {
    double y = ym * j / ngrid;
    ys.push_back(y);
    liq.push_back(uniformize(m, x, y).has_value() ? 1 : 0);
  }
  auto refine = [&](double ylo, double yhi, bool lo_liquid) {
    for (int it = 0; it < 18; ++it) {
      double mid = 0.5 * (ylo + yhi);
      bool l = uniformize(m, x, mid).has_value();
      if (l == lo_liquid) ylo = mid; else yhi = mid;
    }
    return 0.5 * (ylo + yhi);
  };
  std::vector<std::pair<double, double>> out;
  for (size_t i = 0; i < ys.size();) {
    if (!liq[i]) { ++i; continue; }
    size_t j = i;
    while (j < ys.size() && liq[j]) ++j;
    double a = i == 0 ? refine(0.0, ys[0], false) + 0.0
                      : refine(ys[i], ys[i - 1], true);
    double b = j == ys.size() ? refine(ys.back(), ym, true)
                              : refine(ys[j - 1], ys[j], true);
    out.push_back({std::min(a, b), std::max(a, b)});
    i = j;
  }
  return out;
}

// ----------------------------------------------------- predicted covariances

namespace {

// Graded panel nodes on [a, b]: denser toward both endpoints.
void graded_nodes(double a, double b, int per_panel,
                  const std::vector<double>& fracs, std::vector<double>& nodes,
                  std::vector<double>& wts) {
  std::vector<double> gx, gw;
  gauss_legendre(per_panel, gx, gw);
  for (size_t i = 0; i + 1 < fracs.size(); ++i) {
    double u = a + (b - a) * fracs[i], v = a + (b - a) * fracs[i + 1];
    for (size_t q = 0; q < gx.size(); ++q) {
      nodes.push_back(0.5 * (u + v) + 0.5 * (v - u) * gx[q]);
      wts.push_back(0.5 * (v - u) * gw[q]);
    }
  }
}

const std::vector<double>& endpoint_fracs() {
  static std::vector<double> f{0.0,  0.02, 0.06, 0.15, 0.3, 0.5,
                               0.7,  0.85, 0.94, 0.98, 1.0};
  return f;
}

// int_a^b y^{m-1} ln|x-y| dy in closed form (x strictly inside (a, b) or not;
// the antiderivative (y^m - x^m)/m ln|x-y| - poly is continuous at y = x).
double log_inner(double x, double a, double b, int m) {
  auto at = [&](double yv) {
    double t = (std::pow(yv, m) - std::pow(x, m)) / m;
    return yv == x ? 0.0 : t * std::log(std::abs(x - yv));
  };
  double poly = 0.0;
  for (int j = 0; j < m; ++j)
    poly += std::pow(x, m - 1 - j) *
            (std::pow(b, j + 1) - std::pow(a, j + 1)) / (j + 1);
  return at(b) - at(a) - poly / m;
}

}  // namespace

SectionCovTable predict_section_cov_grid(const Bands& bands, int kmax,
                                         int quad_pts) {
  if (kmax < 1)
    throw std::invalid_argument("predict_section_cov_grid: kmax must be >= 1");
  SectionCovTable out;
  out.contour.assign(kmax, std::vector<double>(kmax, 0.0));
  out.real.assign(kmax, std::vector<double>(kmax, 0.0));

  CovKernel kern(bands, quad_pts);
  // Contour form: two concentric circles enclosing every band; the kernel
  // values are shared across all (k, m).
  const double c0 = 0.5 * (bands.alpha.front() + bands.beta.back());
  const double rad = 0.5 * (bands.beta.back() - bands.alpha.front());
  const double R1 = 1.5 * rad, R2 = 1.9 * rad;
  const int nang = std::max(128, 8 * quad_pts);
  std::vector<std::vector<Cplx>> S(kmax, std::vector<Cplx>(kmax, Cplx(0)));
  std::vector<Cplx> zpow(kmax), wpow(kmax), inner(kmax);
  for (int i = 0; i < nang; ++i) {
    double th = 2.0 * kPi * i / nang;
    Cplx z = c0 + R1 * std::exp(Cplx(0, th));
    Cplx dz = Cplx(0, 1) * R1 * std::exp(Cplx(0, th)) * (2.0 * kPi / nang);
    for (int k = 0; k < kmax; ++k) zpow[k] = (k ? zpow[k - 1] : Cplx(1)) * z;
    std::fill(inner.begin(), inner.end(), Cplx(0));
    for (int j = 0; j < nang; ++j) {
      double ph = 2.0 * kPi * j / nang;
      Cplx w = c0 + R2 * std::exp(Cplx(0, ph));
      Cplx dw = Cplx(0, 1) * R2 * std::exp(Cplx(0, ph)) * (2.0 * kPi / nang);
      Cplx kv = dw * kern(z, w);
      for (int m = 0; m < kmax; ++m) {
        kv *= w;
        inner[m] += kv;
      }
    }
    for (int k = 0; k < kmax; ++k)
      for (int m = 0; m < kmax; ++m) S[k][m] += dz * zpow[k] * inner[m];
  }
  for (int k = 0; k < kmax; ++k)
    for (int m = 0; m < kmax; ++m)
      out.contour[k][m] = (-S[k][m] / (4.0 * kPi * kPi)).real();

  // Real form: (km/pi) iint x^{k-1} y^{m-1} Green(x, y) over band pairs,
  // with the logarithmic diagonal handled in closed form on same-band pairs.
  // The Green table over the product grid is shared across all (k, m).
  GreenFunction green(bands, 10);
  const int per = std::max(4, quad_pts / 6);
  for (int p = 0; p < bands.K(); ++p) {
    std::vector<double> xs, xw;
    graded_nodes(bands.alpha[p], bands.beta[p], per, endpoint_fracs(), xs, xw);
    for (int q = 0; q < bands.K(); ++q) {
      std::vector<double> ys, yw;
      graded_nodes(bands.alpha[q], bands.beta[q], per + 1, endpoint_fracs(), ys,
                   yw);
      for (size_t i = 0; i < xs.size(); ++i) {
        std::vector<double> row(kmax, 0.0);
        for (size_t j = 0; j < ys.size(); ++j) {
          double g = green(Cplx(xs[i], 0), Cplx(ys[j], 0));
          // Same-band pairs: quadrature sees only the smooth part; the
          // split-off log is restored in closed form below.
          if (p == q) g += std::log(std::abs(xs[i] - ys[j])) / (2.0 * kPi);
          double t = yw[j] * g;
          for (int m = 0; m < kmax; ++m) {
            row[m] += t;
            t *= ys[j];
          }
        }
        double xp = xw[i];
        for (int k = 0; k < kmax; ++k) {
          for (int m = 0; m < kmax; ++m) out.real[k][m] += xp * row[m];
          xp *= xs[i];
        }
      }
    }
    // Log part, inner integral in closed form, deeply graded outer nodes.
    std::vector<double> ofr{0.0};
    for (double e = 1e-7; e < 0.4; e *= 4.0) ofr.push_back(e);
    ofr.push_back(0.5);
    for (size_t i = ofr.size() - 2; i + 1 > 0; --i) ofr.push_back(1.0 - ofr[i]);
    std::vector<double> os, ow;
    graded_nodes(bands.alpha[p], bands.beta[p], 8, ofr, os, ow);
    for (size_t i = 0; i < os.size(); ++i) {
      double xp = ow[i];
      for (int k = 0; k < kmax; ++k) {
        for (int m = 0; m < kmax; ++m)
          out.real[k][m] -= xp *
                            log_inner(os[i], bands.alpha[p], bands.beta[p],
                                      m + 1) /
                            (2.0 * kPi);
        xp *= os[i];
      }
    }
  }
  for (int k = 0; k < kmax; ++k)
    for (int m = 0; m < kmax; ++m)
      out.real[k][m] *= (k + 1) * (m + 1) / kPi;
  return out;
}

std::pair<double, double> predict_section_cov(const Bands& bands, int k, int m,
                                              int quad_pts) {
  if (k < 1 || m < 1)
    throw std::invalid_argument("predict_section_cov: powers must be >= 1");
  auto t = predict_section_cov_grid(bands, std::max(k, m), quad_pts);
  return {t.contour[k - 1][m - 1], t.real[k - 1][m - 1]};
}

double predict_height_cov(const SlopeModel& m, double x1, int k1, double x2,
                          int k2, int quad_pts) {
  GreenFunction green(m.bands, 10);
  const double ym = m.ymax();
  static const std::vector<double> fr{0.0,  0.03, 0.1, 0.25, 0.45,
                                      0.65, 0.82, 0.93, 1.0};
  const int per = std::max(3, quad_pts / 8);
  struct Line {
    std::vector<Cplx> theta;
    std::vector<double> f, w;
  };
  auto build = [&](double x, int k) {
    Line ln;
    for (auto [a, b] : liquid_slice(m, x)) {
      std::vector<double> ys, yw;
      graded_nodes(a, b, per, fr, ys, yw);
      for (size_t i = 0; i < ys.size(); ++i) {
        auto th = uniformize(m, x, ys[i]);
        if (!th) continue;  // grazing the frozen edge: negligible weight
        ln.theta.push_back(*th);
        ln.f.push_back(x <= m.tau ? std::pow(ys[i], k)
                                  : std::pow(ym - ys[i], k));
        ln.w.push_back(yw[i]);
      }
    }
    return ln;
  };
  Line l1 = build(x1, k1), l2 = build(x2, k2);
  double tot = 0.0;
  for (size_t i = 0; i < l1.theta.size(); ++i) {
    double row = 0.0;
    for (size_t j = 0; j < l2.theta.size(); ++j)
      row += l2.w[j] * l2.f[j] * green(l1.theta[i], l2.theta[j]);
    tot += l1.w[i] * l1.f[i] * row;
  }
  return tot / kPi;
}

// ------------------------------------------------------- local proportions

std::array<double, 3> lozenge_proportions(Cplx xi) {
  if (!(xi.imag() > 0.0))
    throw std::domain_error("lozenge_proportions: Im xi <= 0");
  return {std::arg(xi) / kPi, std::arg((xi - 1.0) / xi) / kPi,
          std::arg(1.0 / (1.0 - xi)) / kPi};
}

std::array<double, 4> domino_proportions(Cplx xi) {
  if (!(xi.imag() > 0.0))
    throw std::domain_error("domino_proportions: Im xi <= 0");
  const Cplx P = 0.0, Q = 1.0, R = 1.0 + xi, T = (1.0 + xi) / (1.0 - xi);
  auto ang = [](Cplx at, Cplx u, Cplx v) {
    return std::abs(std::arg((u - at) / (v - at)));
  };
  double north = ang(R, P, Q) / kPi;
  double south = ang(P, T, R) / kPi;
  double east = ang(P, R, Q) / kPi;
  double west = ang(Q, T, P) / kPi;
  return {north, south, east, west};
}

}  // namespace schurtile
