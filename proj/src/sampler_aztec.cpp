#include "schurtile/sampler_aztec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace schurtile {

namespace {

// Direction offsets white -> black: N, E, W, S.
constexpr long kDx[4] = {0, 0, 1, 1};
constexpr long kDy[4] = {0, -1, 0, -1};

bool black_exists(const AztecSpec& s, long x, long y) {
  return x >= 1 && x <= s.B && y >= 0 && y <= s.A;
}

std::size_t bidx(const AztecSpec& s, long x, long y) {
  return static_cast<std::size_t>((x - 1) * (s.A + 1) + y);
}

std::vector<long> hole_rows(const AztecSpec& s) {
  std::vector<long> h;
  for (long y = 1; y <= s.A; ++y)
    if (!s.in_X(y)) h.push_back(y);
  return h;
}

std::vector<long> default_section(const AztecSpec& s) {
  std::vector<long> ell;
  for (std::size_t k = 0; k < s.groups.size(); ++k)
    for (long y = s.groups[k].first; y < s.groups[k].first + s.n[k]; ++y)
      ell.push_back(y);
  return ell;
}

}  // namespace

bool AztecSpec::in_X(long y) const { return group_of(y) >= 0; }

int AztecSpec::group_of(long y) const {
  for (std::size_t k = 0; k < groups.size(); ++k)
    if (y >= groups[k].first && y <= groups[k].second)
      return static_cast<int>(k);
  return -1;
}

bool AztecSpec::is_white(long x, long y) const {
  if (x < 0 || x > B || y < 1 || y > A) return false;
  return x != t || in_X(y);
}

void AztecSpec::validate() const {
  if (A < 1 || B < 1 || A < B) throw std::invalid_argument("AztecSpec: sides");
  if (t < 1 || t > B) throw std::invalid_argument("AztecSpec: t range");
  if (groups.empty() || n.size() != groups.size())
    throw std::invalid_argument("AztecSpec: group/fraction mismatch");
  if (groups.front().first != 1 || groups.back().second != A)
    throw std::invalid_argument("AztecSpec: groups must span 1 and A");
  long total = 0;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (groups[k].first > groups[k].second)
      throw std::invalid_argument("AztecSpec: empty group");
    if (k && groups[k].first <= groups[k - 1].second)
      throw std::invalid_argument("AztecSpec: groups out of order");
    total += groups[k].second - groups[k].first + 1;
  }
  if (total != B) throw std::invalid_argument("AztecSpec: |X| must equal B");
}

bool AztecSpec::feasible() const {
  long total = 0;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (n[k] < 0 || n[k] > groups[k].second - groups[k].first + 1) return false;
    total += n[k];
  }
  return total == t;
}

std::size_t DominoTiling::wid(long x, long y) const {
  const AztecSpec& s = spec;
  std::size_t off, in_col;
  if (x <= s.t)
    off = static_cast<std::size_t>(x * s.A);
  else
    off = static_cast<std::size_t>(s.t * s.A + s.B + (x - s.t - 1) * s.A);
  if (x == s.t) {
    // rank of y among the group rows
    long r = 0;
    for (const auto& [a, b] : s.groups) {
      if (y > b) {
        r += b - a + 1;
      } else {
        r += y - a;
        break;
      }
    }
    in_col = static_cast<std::size_t>(r);
  } else {
    in_col = static_cast<std::size_t>(y - 1);
  }
  return off + in_col;
}

std::vector<long> DominoTiling::particles(long x) const {
  std::vector<long> out;
  for (long y = 1; y <= spec.A; ++y)
    if (spec.is_white(x, y) && is_particle(x, y)) out.push_back(y);
  return out;
}

bool DominoTiling::valid() const {
  const AztecSpec& s = spec;
  std::vector<char> used(static_cast<std::size_t>(s.B * (s.A + 1)), 0);
  for (long x = 0; x <= s.B; ++x)
    for (long y = 1; y <= s.A; ++y) {
      if (!s.is_white(x, y)) continue;
      const int d = dir(x, y);
      if (d < 0 || d > 3) return false;
      const long bx = x + kDx[d], by = y + kDy[d];
      if (!black_exists(s, bx, by)) return false;
      if (used[bidx(s, bx, by)]) return false;
      used[bidx(s, bx, by)] = 1;
    }
  std::vector<long> cnt(s.groups.size(), 0);
  for (long y : section()) cnt[s.group_of(y)] += 1;
  for (std::size_t k = 0; k < cnt.size(); ++k)
    if (cnt[k] != s.n[k]) return false;
  return true;
}

Rat section_weight_aztec(const AztecSpec& spec, const std::vector<long>& ell) {
  std::vector<long> e = ell;
  std::sort(e.begin(), e.end());
  if (static_cast<long>(e.size()) != spec.t) return Rat(0);
  std::vector<long> cnt(spec.groups.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i && e[i] == e[i - 1]) return Rat(0);
    const int g = spec.group_of(e[i]);
    if (g < 0) return Rat(0);
    cnt[g] += 1;
  }
  for (std::size_t k = 0; k < cnt.size(); ++k)
    if (cnt[k] != spec.n[k]) return Rat(0);
  Rat w(1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j)
      w *= Rat((e[j] - e[i]) * (e[j] - e[i]));
    w /= factorial(e[i] - 1) * factorial(spec.A - e[i]);
    for (long u = 1; u <= spec.A; ++u)
      if (!spec.in_X(u)) w *= Rat(std::labs(e[i] - u));
  }
  return w;
}

Int aztec_halfcount(const std::vector<long>& ell) {
  const long t = static_cast<long>(ell.size());
  for (std::size_t i = 1; i < ell.size(); ++i)
    if (ell[i] <= ell[i - 1])
      throw std::invalid_argument("aztec_halfcount: ell must increase");
  // 2^{t(t+1)/2} times the number of monotone triangles with top row ell,
  // i.e. the Vandermonde of ell over the Vandermonde of 1..t.
  Rat c = rat_pow(Rat(2), t * (t + 1) / 2);
  for (std::size_t i = 0; i < ell.size(); ++i)
    for (std::size_t j = i + 1; j < ell.size(); ++j)
      c *= frac(ell[j] - ell[i], static_cast<long>(j - i));
  return c.get_num();
}

Int count_left_tilings(long A, long t, const std::vector<long>& ell) {
  // whites of the left rectangle in column order, with allowed directions
  struct White {
    long x, y;
    std::vector<int> dirs;
  };
  std::vector<White> ws;
  for (long x = 0; x < t; ++x)
    for (long y = 1; y <= A; ++y) ws.push_back({x, y, {0, 1, 2, 3}});
  for (long y : ell) ws.push_back({t, y, {0, 1}});
  std::vector<char> used(static_cast<std::size_t>(t * (A + 1)), 0);
  Int total(0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == ws.size()) {
      total += 1;
      return;
    }
    for (int d : ws[i].dirs) {
      const long bx = ws[i].x + kDx[d], by = ws[i].y + kDy[d];
      if (bx < 1 || bx > t || by < 0 || by > A) continue;
      const std::size_t b = static_cast<std::size_t>((bx - 1) * (A + 1) + by);
      if (used[b]) continue;
      used[b] = 1;
      rec(i + 1);
      used[b] = 0;
    }
  };
  rec(0);
  return total;
}

std::vector<DominoTiling> enumerate_tilings(const AztecSpec& spec,
                                            std::size_t cap) {
  spec.validate();
  std::vector<DominoTiling> out;
  if (!spec.feasible()) return out;
  struct White {
    long x, y;
  };
  std::vector<White> ws;
  for (long x = 0; x <= spec.B; ++x)
    for (long y = 1; y <= spec.A; ++y)
      if (spec.is_white(x, y)) ws.push_back({x, y});
  DominoTiling til;
  til.spec = spec;
  til.match.assign(ws.size(), -1);
  std::vector<char> used(static_cast<std::size_t>(spec.B * (spec.A + 1)), 0);
  std::vector<long> cnt(spec.groups.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == ws.size()) {
      for (std::size_t k = 0; k < cnt.size(); ++k)
        if (cnt[k] != spec.n[k]) return;
      if (out.size() >= cap)
        throw std::runtime_error("enumerate_tilings: state cap exceeded");
      out.push_back(til);
      return;
    }
    const long x = ws[i].x, y = ws[i].y;
    for (int d = 0; d < 4; ++d) {
      const long bx = x + kDx[d], by = y + kDy[d];
      if (!black_exists(spec, bx, by)) continue;
      if (used[bidx(spec, bx, by)]) continue;
      const bool particle = x == spec.t && d < 2;
      if (particle && cnt[spec.group_of(y)] >= spec.n[spec.group_of(y)])
        continue;
      used[bidx(spec, bx, by)] = 1;
      if (particle) cnt[spec.group_of(y)] += 1;
      til.match[i] = d;
      rec(i + 1);
      if (particle) cnt[spec.group_of(y)] -= 1;
      used[bidx(spec, bx, by)] = 0;
    }
  };
  rec(0);
  return out;
}

DominoTiling initial_domino_tiling(const AztecSpec& spec) {
  return initial_domino_tiling(spec, default_section(spec));
}

DominoTiling initial_domino_tiling(const AztecSpec& spec,
                                   const std::vector<long>& ell) {
  spec.validate();
  if (section_weight_aztec(spec, ell) == 0)
    throw std::invalid_argument("initial_domino_tiling: infeasible section");
  struct White {
    long x, y;
    std::vector<int> dirs;
  };
  std::vector<White> ws;
  for (long x = 0; x <= spec.B; ++x)
    for (long y = 1; y <= spec.A; ++y) {
      if (!spec.is_white(x, y)) continue;
      std::vector<int> dirs;
      if (x == spec.t) {
        const bool particle = std::find(ell.begin(), ell.end(), y) != ell.end();
        dirs = particle ? std::vector<int>{0, 1} : std::vector<int>{2, 3};
      } else {
        dirs = {0, 1, 2, 3};
      }
      ws.push_back({x, y, dirs});
    }
  // Kuhn's augmenting-path matching, deterministic in the white order
  const std::size_t nb = static_cast<std::size_t>(spec.B * (spec.A + 1));
  std::vector<long> owner(nb, -1);  // black -> white index
  std::vector<int> via(ws.size(), -1);
  std::vector<char> seen(nb, 0);
  std::function<bool(std::size_t)> aug = [&](std::size_t w) -> bool {
    for (int d : ws[w].dirs) {
      const long bx = ws[w].x + kDx[d], by = ws[w].y + kDy[d];
      if (!black_exists(spec, bx, by)) continue;
      const std::size_t b = bidx(spec, bx, by);
      if (seen[b]) continue;
      seen[b] = 1;
      if (owner[b] < 0 || aug(static_cast<std::size_t>(owner[b]))) {
        owner[b] = static_cast<long>(w);
        via[w] = d;
        return true;
      }
    }
    return false;
  };
  for (std::size_t w = 0; w < ws.size(); ++w) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!aug(w))
      throw std::runtime_error("initial_domino_tiling: no perfect matching");
  }
  DominoTiling til;
  til.spec = spec;
  til.match.assign(ws.size(), -1);
  for (std::size_t w = 0; w < ws.size(); ++w) til.match[w] = via[w];
  return til;
}

std::vector<RotationPair> rotation_pairs(const AztecSpec& spec,
                                         bool interior_only) {
  std::vector<RotationPair> out;
  for (long x = 0; x <= spec.B; ++x)
    for (long y = 1; y < spec.A; ++y)
      if (spec.is_white(x, y) && spec.is_white(x, y + 1) &&
          !(interior_only && x == spec.t))
        out.push_back({x, y, x, y + 1});
  for (long x = 0; x < spec.B; ++x)
    for (long y = 1; y <= spec.A; ++y)
      if (spec.is_white(x, y) && spec.is_white(x + 1, y))
        out.push_back({x, y, x + 1, y});
  return out;
}

bool rotation_ok(const DominoTiling& til, const RotationPair& p) {
  const int d1 = til.dir(p[0], p[1]), d2 = til.dir(p[2], p[3]);
  if (p[0] == p[2]) {
    // vertical pair; on the section column the particle hops a row
    if (p[0] == til.spec.t &&
        til.spec.group_of(p[1]) != til.spec.group_of(p[3]))
      return false;
    return (d1 == 0 && d2 == 3) || (d1 == 2 && d2 == 1);
  }
  return (d1 == 2 && d2 == 1) || (d1 == 3 && d2 == 0);
}

void rotation_apply(DominoTiling& til, const RotationPair& p) {
  int& d1 = til.match[til.wid(p[0], p[1])];
  int& d2 = til.match[til.wid(p[2], p[3])];
  if (p[0] == p[2]) {
    if (d1 == 0) {
      d1 = 2;
      d2 = 1;
    } else {
      d1 = 0;
      d2 = 3;
    }
  } else {
    if (d1 == 2) {
      d1 = 3;
      d2 = 0;
    } else {
      d1 = 2;
      d2 = 1;
    }
  }
}

DominoMcmc::DominoMcmc(const AztecSpec& spec, std::uint64_t seed,
                       std::uint64_t stream)
    : st_(initial_domino_tiling(spec)),
      pairs_(rotation_pairs(spec)),
      rng_(seed, stream) {}

bool DominoMcmc::step() {
  const std::size_t k =
      static_cast<std::size_t>(rng_.below(pairs_.size()));
  if (!rotation_ok(st_, pairs_[k])) return false;
  rotation_apply(st_, pairs_[k]);
  return true;
}

void DominoMcmc::sweep() {
  for (std::size_t i = 0; i < pairs_.size(); ++i) step();
}

void DominoMcmc::run(long sweeps) {
  for (long i = 0; i < sweeps; ++i) sweep();
}

AztecSectionSampler::AztecSectionSampler(const AztecSpec& spec,
                                         std::uint64_t seed,
                                         std::uint64_t stream)
    : spec_(spec), rng_(seed, stream) {
  spec.validate();
  if (!spec.feasible())
    throw std::invalid_argument("AztecSectionSampler: infeasible spec");
  ell_ = default_section(spec);
  holes_ = hole_rows(spec);
}

bool AztecSectionSampler::step() {
  if (ell_.empty()) return false;
  const std::size_t i = static_cast<std::size_t>(rng_.below(ell_.size()));
  const int dir = rng_.coin() ? 1 : -1;
  const long y = ell_[i], tgt = y + dir;
  if (spec_.group_of(tgt) != spec_.group_of(y)) return false;
  if (std::binary_search(ell_.begin(), ell_.end(), tgt)) return false;
  // log ratio of one-body weights plus squared-Vandermonde factors
  double logr = std::lgamma(y) - std::lgamma(tgt) + std::lgamma(spec_.A - y + 1.0) -
                std::lgamma(spec_.A - tgt + 1.0);
  for (long u : holes_)
    logr += std::log(std::fabs(double(tgt - u)) / std::fabs(double(y - u)));
  for (long r : ell_)
    if (r != y)
      logr += 2 * std::log(std::fabs(double(tgt - r)) /
                           std::fabs(double(y - r)));
  if (logr < 0 && rng_.u01() >= std::exp(logr)) return false;
  ell_[i] = tgt;
  std::sort(ell_.begin(), ell_.end());
  return true;
}

void AztecSectionSampler::sweep() {
  for (std::size_t i = 0; i < ell_.size(); ++i) step();
}

void AztecSectionSampler::run(long sweeps) {
  for (long i = 0; i < sweeps; ++i) sweep();
}

DominoTwoStage::DominoTwoStage(const AztecSpec& spec, std::uint64_t seed,
                               std::uint64_t stream, long interior_sweeps)
    : sec_(spec, seed, stream + 1),
      st_(initial_domino_tiling(spec, sec_.positions())),
      interior_(rotation_pairs(spec, /*interior_only=*/true)),
      rng_(seed, stream),
      interior_sweeps_(interior_sweeps) {}

void DominoTwoStage::sweep() {
  const std::vector<long> before = sec_.positions();
  sec_.sweep();
  if (sec_.positions() != before)
    st_ = initial_domino_tiling(st_.spec, sec_.positions());
  for (long s = 0; s < interior_sweeps_; ++s)
    for (std::size_t i = 0; i < interior_.size(); ++i) {
      const std::size_t k =
          static_cast<std::size_t>(rng_.below(interior_.size()));
      if (rotation_ok(st_, interior_[k])) rotation_apply(st_, interior_[k]);
    }
}

void DominoTwoStage::run(long sweeps) {
  for (long i = 0; i < sweeps; ++i) sweep();
}

}  // namespace schurtile
