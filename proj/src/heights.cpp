#include "schurtile/heights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace schurtile {

namespace {

long floor_scaled(double v, long L) {
  return static_cast<long>(std::floor(v * L + 1e-9));
}

// Physical particle positions of line q (window only; hole included).
std::vector<long> physical_row(const LozengeTiling& til, long q) {
  std::vector<long> out;
  for (long p : til.rows[q])
    if (p >= til.spec.lo(q) && p <= til.spec.hi(q)) out.push_back(p);
  return out;
}

// Padding-extended row as seen from the left (q <= t) or right (q >= t).
std::vector<long> extended_row(const LozengeTiling& til, long q, bool left) {
  std::vector<long> out = physical_row(til, q);
  std::vector<long> pad = left ? til.spec.padL(q) : til.spec.padR(q);
  out.insert(out.end(), pad.begin(), pad.end());
  std::sort(out.begin(), out.end());
  return out;
}

Rat power_sum_observable(const std::vector<long>& positions, long k, long L) {
  Rat s(0);
  for (long p : positions) s += rat_pow(frac(p, L), k + 1);
  return -s / Rat(k + 1);
}

// Exact integral of -H(y) y^k dy over [0, jmax/L] for a staircase that is
// constant h(j) on (j/L, (j+1)/L].
template <class H>
Rat staircase_integral(long k, long L, long jmax, H&& h) {
  Rat s(0);
  for (long j = 0; j < jmax; ++j) {
    const long hj = h(j);
    if (hj == 0) continue;
    s += Rat(hj) * (rat_pow(frac(j + 1, L), k + 1) - rat_pow(frac(j, L), k + 1));
  }
  return -s / Rat(k + 1);
}

long count_geq(const std::vector<long>& v, long m) {
  long c = 0;
  for (long p : v)
    if (p >= m) ++c;
  return c;
}

}  // namespace

long height(const LozengeTiling& til, double x, double y, long L) {
  const HexHoleSpec& s = til.spec;
  const long q = floor_scaled(x, L);
  if (x < 0 || q > s.B + s.C)
    throw std::invalid_argument("height: x outside domain");
  const double ly = y * L;
  if (ly < s.lo(q) - 1e-9 || ly > s.hi(q) + 1 + 1e-9)
    throw std::invalid_argument("height: y outside domain");
  long cnt = 0;
  for (long p : physical_row(til, q))
    if (static_cast<double>(p) >= ly - 1e-9) ++cnt;
  return cnt;
}

long height(const DominoTiling& til, double x, double y, long L) {
  const AztecSpec& s = til.spec;
  const long q = floor_scaled(x, L);
  const long r = floor_scaled(y, L);
  if (x < 0 || q > s.B) throw std::invalid_argument("height: x outside domain");
  if (r < 0 || r > s.A) throw std::invalid_argument("height: y outside domain");
  long cnt = 0;
  for (long p : til.particles(q))
    if (p > r) ++cnt;
  return cnt;
}

Rat observable_p(const LozengeTiling& til, double x, long k, long L) {
  const HexHoleSpec& s = til.spec;
  const long q = floor_scaled(x, L);
  if (q < 1 || q > s.B + s.C - 1 || x <= 0)
    throw std::invalid_argument("observable_p: x outside open interval");
  const bool left = x * L <= static_cast<double>(s.t) + 1e-9;
  std::vector<long> row = extended_row(til, q, left);
  if (!left)
    for (long& p : row) p = s.A + s.B - p;  // reflected coordinate
  return power_sum_observable(row, k, L);
}

// Same observable through the height staircase: the random part of each level
// count comes from height(), the deterministic part from the padding of the
// spec.  Exact agreement with observable_p checks the height convention.
Rat observable_p_integral(const LozengeTiling& til, double x, long k, long L) {
  const HexHoleSpec& s = til.spec;
  const long q = floor_scaled(x, L);
  if (q < 1 || q > s.B + s.C - 1 || x <= 0)
    throw std::invalid_argument("observable_p: x outside open interval");
  const bool left = x * L <= static_cast<double>(s.t) + 1e-9;
  std::vector<long> pad = left ? s.padL(q) : s.padR(q);
  if (!left)
    for (long& p : pad) p = s.A + s.B - p;
  const long nphys = height(til, x, s.lo(q) / static_cast<double>(L), L);
  const long jmax = s.A + s.B + s.C;
  auto phys_geq = [&](long m) {  // physical positions >= m, via height()
    if (m > s.hi(q)) return 0L;
    if (m <= s.lo(q)) return nphys;
    return height(til, x, m / static_cast<double>(L), L);
  };
  auto h = [&](long j) {
    long c = count_geq(pad, j + 1);
    if (left)
      c += phys_geq(j + 1);
    else
      c += nphys - phys_geq(s.A + s.B - j);  // reflected positions >= j+1
    return c;
  };
  return staircase_integral(k, L, jmax, h);
}

Rat observable_p(const DominoTiling& til, double x, long k, long L) {
  const AztecSpec& s = til.spec;
  const long q = floor_scaled(x, L);
  if (q < 0 || q > s.B || x < 0)
    throw std::invalid_argument("observable_p: x outside domain");
  std::vector<long> row = til.particles(q);
  const bool left = x * L <= static_cast<double>(s.t) + 1e-9;
  if (!left)
    for (long& p : row) p = s.A + 1 - p;  // reflected coordinate
  return power_sum_observable(row, k, L);
}

Rat observable_p_integral(const DominoTiling& til, double x, long k, long L) {
  const AztecSpec& s = til.spec;
  const long q = floor_scaled(x, L);
  if (q < 0 || q > s.B || x < 0)
    throw std::invalid_argument("observable_p: x outside domain");
  const bool left = x * L <= static_cast<double>(s.t) + 1e-9;
  const long n = height(til, x, 0.0, L);  // all particles of the column
  auto above = [&](long r) {  // particles strictly above r, via height()
    if (r >= s.A) return 0L;
    if (r <= 0) return n;
    return height(til, x, r / static_cast<double>(L), L);
  };
  auto h = [&](long j) {
    // Positions are >= 1, reflected positions A+1-l likewise.
    return left ? above(j) : n - above(s.A - j);
  };
  return staircase_integral(k, L, s.A, h);
}

}  // namespace schurtile
