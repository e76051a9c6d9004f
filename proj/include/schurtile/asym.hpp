// Numerical asymptotic layer: Stieltjes transforms of section ensembles,
// band detection, the multi-cut covariance kernel, the Green function of the
// slit plane, critical-equation slope solvers, the uniformization map, and
// the predicted covariances that the Monte Carlo acceptance tests compare
// against.
//
// Everything here is double-precision numerics.  Quadratures are
// Gauss-Legendre panels on explicit polyline contours; all radii/margins
// have documented defaults.
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace schurtile {

using Cplx = std::complex<double>;

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Ordered disjoint open intervals (alpha_k, beta_k).
struct Bands {
  std::vector<double> alpha, beta;
  int K() const { return static_cast<int>(alpha.size()); }
  void validate() const;  // alpha_1 < beta_1 < alpha_2 < ...
};

// Density of a compactly supported measure, as a piecewise model built from
// Monte Carlo samples (monotone-cubic interpolation of the integrated
// counting function) or from a user-supplied density on a grid.  Exposes
// the Stieltjes transform G(z) = int mu(x)/(z-x) dx.
class DensityModel {
 public:
  // samples: rows of particle positions already divided by the scale;
  // bandwidth defaults to 2/scale.
  static DensityModel from_samples(
      const std::vector<std::vector<double>>& samples, double scale,
      double bandwidth = 0.0);
  static DensityModel from_density(const std::function<double(double)>& mu,
                                   double lo, double hi, int grid = 512);

  double mass() const { return mass_; }
  double lo() const { return x_.front(); }
  double hi() const { return x_.back(); }
  double density(double x) const;
  Cplx stieltjes(Cplx z) const;  // warns via throw if z within h of support

  const std::vector<double>& grid() const { return x_; }

 private:
  std::vector<double> x_, f_, slope_;  // cumulative mass F and its slopes
  double mass_ = 0, h_ = 0;
  void finish();
};

// Mean of (1/L) sum 1/(z - ell_i/L) over samples of raw positions ell.
Cplx empirical_stieltjes(const std::vector<std::vector<long>>& samples, long L,
                         Cplx z);

// Maximal intervals where eps < mu < 1 - eps.  If expect >= 0 and the count
// differs, throws with the found intervals in the message.
Bands detect_bands(const DensityModel& d, double eps, int expect = -1);

// The multi-cut covariance kernel.  The degree-(K-2) polynomial in w is
// fixed by the vanishing of the w-periods around every band, solved by
// least squares over all K conditions (they are one-dependent); the square
// root takes the branch mapping large positive reals to large positive
// reals, with cuts exactly on the bands.
class CovKernel {
 public:
  explicit CovKernel(Bands bands, int quad_pts = 48);
  Cplx operator()(Cplx z, Cplx w) const;
  const Bands& bands() const { return bands_; }
  double period_residual() const { return period_residual_; }
  // Band period of the kernel in w at fixed z (diagnostic / tests).
  Cplx band_period(Cplx z, int k) const;
  Cplx sq(Cplx w) const;  // sqrt(prod (w-alpha_i)(w-beta_i)), band cuts

 private:
  Bands bands_;
  int npts_;
  double scale_ = 1;
  std::vector<double> gl_x_, gl_w_;
  // contour nodes/dw-weights around each band and the ellipse parameters
  std::vector<std::vector<Cplx>> cn_, cw_;
  std::vector<double> em_, ea_, eb_;
  std::vector<std::vector<Cplx>> period_;  // period_[k][d] of w^d/sq
  double period_residual_ = 0;
  mutable Cplx cz_{1e300, 0};  // last-argument cache for cpoly
  mutable std::vector<Cplx> cc_;
  std::vector<Cplx> cpoly(Cplx z) const;   // c_d(z), d = 0..K-2
  std::vector<Cplx> band_b(Cplx z) const;  // band periods of the z-part
  Cplx base(Cplx z, Cplx w) const;         // kernel without the c-term
  friend class GreenFunction;
};

// Green function of the slit plane C \ (R minus the open bands), built from
// path integrals of the kernel with base point D = i (1 + max |endpoint|).
class GreenFunction {
 public:
  explicit GreenFunction(Bands bands, int path_pts = 32);
  // Real-valued; z, w anywhere off the diagonal (band reals are evaluated
  // by a small imaginary offset; off-band reals give 0).
  double operator()(Cplx z, Cplx w) const;
  const CovKernel& kernel() const { return kern_; }
  // Path from conj(a) to a avoiding the closed bands; off is a lateral
  // offset of the gap crossing (used to keep two paths apart).
  std::vector<Cplx> path(Cplx a, double off = 0.0) const;
  // Double integral of the kernel over two explicit polylines (used for the
  // path-independence checks; operator() builds its own polylines).
  Cplx path_integral2(const std::vector<Cplx>& pz, const std::vector<Cplx>& pw,
                      double grade_floor = 0.0) const;

 private:
  CovKernel kern_;
  int npts_;
  std::vector<double> gl_x_, gl_w_;
  double base_y_ = 1;
  void segment_nodes(Cplx p, Cplx q, double grade_floor,
                     std::vector<Cplx>& nodes, std::vector<Cplx>& wts) const;
  // z-side data of the collapsed double integral (endpoints, their sq values,
  // and the integrated c-polynomial coefficients); reusable across w.
  struct ZReduction {
    Cplx za, zb, sqa, sqb;
    std::vector<Cplx> C;
  };
  ZReduction reduce_z(const std::vector<Cplx>& pz, double grade_floor) const;
  Cplx integrate_w(const std::vector<Cplx>& pw, double grade_floor,
                   const ZReduction& zr) const;
  mutable Cplx zcache_key_{1e300, 0.0};
  mutable double zcache_floor_ = -1.0;
  mutable ZReduction zcache_;
};

// Families for the critical-equation slope solvers.
enum class TileFamily { Hexagon, Aztec };
enum class Side { Left, Right };

// Limit data of one tiling model: the seam position and extents, the two
// t-scaled unit-mass section laws (left: lambda_i/t; right: reflected
// co-positions over t~), and the bands of the seam measure.
struct SlopeModel {
  TileFamily family = TileFamily::Hexagon;
  double tau = 0, Ahat = 0, Bhat = 0, Chat = 0;  // Chat ignored for Aztec
  DensityModel left, right;
  Bands bands;
  double width() const {
    return family == TileFamily::Hexagon ? Bhat + Chat : Bhat;
  }
  double ymax() const {
    return family == TileFamily::Hexagon ? Ahat + Bhat : Ahat;
  }
};

// Unique root of the critical equation at (x, y): upper half-plane for the
// left side, lower for the right; nullopt = frozen.  Damped Newton from a
// grid of starts, with an argument-principle root count as fallback.
std::optional<Cplx> solve_slope(const SlopeModel& m, Side side, double x,
                                double y);

// Complex slope xi (Im xi > 0) at a liquid point, from the critical root.
std::optional<Cplx> complex_slope(const SlopeModel& m, double x, double y);

// Uniformization map Theta: liquid region -> slit plane; three-case gluing
// (left root / right root / y itself on the seam).  nullopt = frozen.
std::optional<Cplx> uniformize(const SlopeModel& m, double x, double y);

// Liquid y-intervals of the vertical slice at x, by scanning ngrid points.
std::vector<std::pair<double, double>> liquid_slice(const SlopeModel& m,
                                                    double x, int ngrid = 200);

// Section covariance of the centered power sums sum (ell_i/L)^k: the
// contour form (large-contour double integral of z^k w^m Cov) and the
// equivalent real form (km/pi) iint x^{k-1} y^{m-1} Green(x,y) over the
// bands; returns {contour, real}.
std::pair<double, double> predict_section_cov(const Bands& bands, int k, int m,
                                              int quad_pts = 48);

// Whole table of section covariances for 1 <= k, m <= kmax; the kernel and
// Green evaluations are shared across all pairs, so this costs about as much
// as a single predict_section_cov call.  contour[k-1][m-1] / real[k-1][m-1].
struct SectionCovTable {
  std::vector<std::vector<double>> contour, real;
};
SectionCovTable predict_section_cov_grid(const Bands& bands, int kmax,
                                         int quad_pts = 48);

// Predicted covariance of the slice observables at lines x1, x2 with powers
// k1, k2: (1/pi) iint f1(y1) f2(y2) Green(Theta(x1,y1), Theta(x2,y2)),
// where f(y) = y^k on the left side of the seam and (ymax - y)^k on the
// right, matching the reflected coordinate of the lattice observables.
double predict_height_cov(const SlopeModel& m, double x1, int k1, double x2,
                          int k2, int quad_pts = 24);

// Local lozenge proportions from the complex slope: the three angles/pi of
// the triangle with vertices 1, xi, 0.  Throws if Im xi <= 0.
std::array<double, 3> lozenge_proportions(Cplx xi);

// Local domino proportions (north, south, east, west) from the cyclic
// quadrilateral with vertices 0, 1, 1+xi, (1+xi)/(1-xi).
std::array<double, 4> domino_proportions(Cplx xi);

}  // namespace schurtile
