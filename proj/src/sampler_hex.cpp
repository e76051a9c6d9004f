#include "schurtile/sampler_hex.hpp"

#include "schurtile/schur.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace schurtile {

namespace {

// Number of particles (with padding) on line q when it is read as a left
// resp. right pattern row.
long rankL(const HexHoleSpec& s, long q) { return q; }
long rankR(const HexHoleSpec& s, long q) { return s.B + s.C - q; }

void append_range(std::vector<long>& v, long a, long b) {
  for (long p = a; p <= b; ++p) v.push_back(p);
}

// Rising rule: smaller row p' (rank r-1) against larger row p (rank r):
// p'_i in [p_i, p_{i+1} - 1].
bool rise_ok(const std::vector<long>& smaller, const std::vector<long>& larger) {
  if (smaller.size() + 1 != larger.size()) return false;
  for (std::size_t i = 0; i < smaller.size(); ++i)
    if (smaller[i] < larger[i] || smaller[i] >= larger[i + 1]) return false;
  return true;
}

// Falling rule: p'_i in [p_i + 1, p_{i+1}].
bool fall_ok(const std::vector<long>& smaller, const std::vector<long>& larger) {
  if (smaller.size() + 1 != larger.size()) return false;
  for (std::size_t i = 0; i < smaller.size(); ++i)
    if (smaller[i] <= larger[i] || smaller[i] > larger[i + 1]) return false;
  return true;
}

std::vector<long> merge_sorted(std::vector<long> a, const std::vector<long>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

// Free physical particle count on the section.
long free_count(const HexHoleSpec& s) {
  const long W = s.hi(s.t) - s.lo(s.t) + 1;
  return (W - s.A) - s.D;
}

std::vector<long> hole_block(const HexHoleSpec& s) {
  std::vector<long> h;
  append_range(h, s.hole_lo(), s.hole_lo() + s.D - 1);
  return h;
}

}  // namespace

std::vector<long> HexHoleSpec::padL(long q) const {
  std::vector<long> p;
  append_range(p, 0, q - C - 1);
  append_range(p, A + B, A + q - 1);
  return p;
}

std::vector<long> HexHoleSpec::padR(long q) const {
  std::vector<long> p;
  append_range(p, q - C, -1);
  append_range(p, std::min(q + A, A + B), A + B - 1);
  return p;
}

void HexHoleSpec::validate() const {
  if (A < 1 || B < 0 || C < 0 || D < 0 || E < 0)
    throw std::invalid_argument("HexHoleSpec: negative side");
  if (t < 0 || t > B + C) throw std::invalid_argument("HexHoleSpec: t range");
  if (D > 0 && (hole_lo() < lo(t) || hole_lo() + D - 1 > hi(t)))
    throw std::invalid_argument("HexHoleSpec: hole outside hexagon");
  if (n1 < 0 || n2 < 0)
    throw std::invalid_argument("HexHoleSpec: negative filling fraction");
}

bool HexHoleSpec::feasible() const {
  if (n1 + n2 != free_count(*this)) return false;
  if (D == 0) return true;  // no barrier: only the total count matters
  const long cap1 = hole_lo() - lo(t);
  const long cap2 = hi(t) - (hole_lo() + D) + 1;
  return n1 <= cap1 && n2 <= cap2;
}

std::vector<long> LozengeTiling::section() const {
  std::vector<long> fixed = merge_sorted(spec.padL(spec.t), hole_block(spec));
  std::vector<long> ell;
  for (long p : rows[spec.t])
    if (!std::binary_search(fixed.begin(), fixed.end(), p)) ell.push_back(p);
  return ell;
}

bool LozengeTiling::valid() const {
  const long Q = spec.B + spec.C;
  if (static_cast<long>(rows.size()) != Q + 1) return false;
  for (long q = 0; q <= Q; ++q) {
    const long r = q <= spec.t ? rankL(spec, q) : rankR(spec, q);
    if (static_cast<long>(rows[q].size()) != r) return false;
    if (!std::is_sorted(rows[q].begin(), rows[q].end())) return false;
  }
  // fixed section content and window bounds for the free part
  std::vector<long> fixed = merge_sorted(spec.padL(spec.t), hole_block(spec));
  for (long p : fixed)
    if (!std::binary_search(rows[spec.t].begin(), rows[spec.t].end(), p))
      return false;
  long below = 0, above = 0;
  for (long p : section()) {
    if (p < spec.lo(spec.t) || p > spec.hi(spec.t)) return false;
    (p < spec.hole_lo() ? below : above) += 1;
  }
  if (spec.D > 0 && (below != spec.n1 || above != spec.n2)) return false;
  // interlacing on the left, across the section, and on the right
  for (long q = 1; q <= spec.t; ++q)
    if (!rise_ok(rows[q - 1], rows[q])) return false;
  std::vector<long> rsec = merge_sorted(section(), spec.padR(spec.t));
  rsec = merge_sorted(rsec, hole_block(spec));
  for (long q = spec.t + 1; q <= Q; ++q) {
    const std::vector<long>& larger = q == spec.t + 1 ? rsec : rows[q - 1];
    if (!fall_ok(rows[q], larger)) return false;
  }
  return true;
}

Rat section_weight_hex(const HexHoleSpec& spec, const std::vector<long>& ell) {
  std::vector<long> e = ell;
  std::sort(e.begin(), e.end());
  if (static_cast<long>(e.size()) != free_count(spec)) return Rat(0);
  long below = 0;
  std::vector<long> hole = hole_block(spec);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i && e[i] == e[i - 1]) return Rat(0);
    if (e[i] < spec.lo(spec.t) || e[i] > spec.hi(spec.t)) return Rat(0);
    if (std::binary_search(hole.begin(), hole.end(), e[i])) return Rat(0);
    if (e[i] < spec.hole_lo()) ++below;
  }
  if (spec.D > 0 && (below != spec.n1 ||
                     static_cast<long>(e.size()) - below != spec.n2))
    return Rat(0);
  std::vector<long> left = merge_sorted(merge_sorted(e, spec.padL(spec.t)), hole);
  std::vector<long> right =
      merge_sorted(merge_sorted(e, spec.padR(spec.t)), hole);
  return schur_dim_positions(left) * schur_dim_positions(right);
}

namespace {

// Enumerate all descending continuations of a pattern row by the rising or
// falling rule, invoking sink on each complete stack (top row excluded).
template <typename Sink>
void enumerate_stack(const std::vector<long>& top, long depth, bool rising,
                     std::vector<std::vector<long>>& acc, Sink&& sink) {
  if (depth == 0) {
    sink(acc);
    return;
  }
  // copy: acc may reallocate during the recursion below
  const std::vector<long> P = acc.empty() ? top : acc.back();
  std::vector<long> cur(P.size() - 1);
  // depth-first product over the independent per-index windows
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cur.size()) {
      acc.push_back(cur);
      enumerate_stack(top, depth - 1, rising, acc, std::forward<Sink>(sink));
      acc.pop_back();
      return;
    }
    const long a = rising ? P[i] : P[i] + 1;
    const long b = rising ? P[i + 1] - 1 : P[i + 1];
    for (long p = a; p <= b; ++p) {
      cur[i] = p;
      rec(i + 1);
    }
  };
  rec(0);
}

void all_sections(const HexHoleSpec& s, std::vector<std::vector<long>>& out) {
  const long lo = s.lo(s.t), hi = s.hi(s.t);
  std::vector<long> lowslots, hislots;
  if (s.D > 0) {
    append_range(lowslots, lo, s.hole_lo() - 1);
    append_range(hislots, s.hole_lo() + s.D, hi);
  } else {
    append_range(lowslots, lo, hi);
  }
  const long k1 = s.D > 0 ? s.n1 : s.n1 + s.n2;
  const long k2 = s.D > 0 ? s.n2 : 0;
  std::vector<long> pick1, pick2;
  std::function<void(std::size_t, long, const std::vector<long>&,
                     std::vector<long>&, std::function<void()>)>
      choose = [&](std::size_t from, long k, const std::vector<long>& slots,
                   std::vector<long>& pick, std::function<void()> done) {
        if (k == 0) {
          done();
          return;
        }
        for (std::size_t i = from; i + k <= slots.size() + 0u; ++i) {
          pick.push_back(slots[i]);
          choose(i + 1, k - 1, slots, pick, done);
          pick.pop_back();
        }
      };
  choose(0, k1, lowslots, pick1, [&] {
    choose(0, k2, hislots, pick2, [&] {
      out.push_back(merge_sorted(pick1, pick2));
    });
  });
}

}  // namespace

std::vector<LozengeTiling> enumerate_tilings(const HexHoleSpec& spec,
                                             std::size_t cap) {
  spec.validate();
  std::vector<LozengeTiling> out;
  if (!spec.feasible()) return out;
  std::vector<std::vector<long>> sections;
  all_sections(spec, sections);
  const std::vector<long> hole = hole_block(spec);
  for (const auto& ell : sections) {
    std::vector<long> topL =
        merge_sorted(merge_sorted(ell, spec.padL(spec.t)), hole);
    std::vector<long> topR =
        merge_sorted(merge_sorted(ell, spec.padR(spec.t)), hole);
    std::vector<std::vector<long>> accL, accR;
    enumerate_stack(topL, spec.t, /*rising=*/true, accL, [&](auto& L) {
      enumerate_stack(topR, spec.B + spec.C - spec.t, false, accR, [&](auto& R) {
        if (out.size() >= cap)
          throw std::runtime_error("enumerate_tilings: state cap exceeded");
        LozengeTiling til;
        til.spec = spec;
        til.rows.resize(spec.B + spec.C + 1);
        til.rows[spec.t] = topL;
        for (long q = 1; q <= spec.t; ++q) til.rows[spec.t - q] = L[q - 1];
        for (long q = 1; q <= spec.B + spec.C - spec.t; ++q)
          til.rows[spec.t + q] = R[q - 1];
        out.push_back(std::move(til));
      });
    });
  }
  return out;
}

LozengeTiling minimal_tiling(const HexHoleSpec& spec) {
  spec.validate();
  if (!spec.feasible())
    throw std::invalid_argument("minimal_tiling: infeasible filling fractions");
  LozengeTiling til;
  til.spec = spec;
  const long Q = spec.B + spec.C;
  til.rows.resize(Q + 1);
  // section: free particles packed to the bottom of their segments
  std::vector<long> ell;
  if (spec.D > 0) {
    append_range(ell, spec.lo(spec.t), spec.lo(spec.t) + spec.n1 - 1);
    append_range(ell, spec.hole_lo() + spec.D,
                 spec.hole_lo() + spec.D + spec.n2 - 1);
  } else {
    append_range(ell, spec.lo(spec.t), spec.lo(spec.t) + spec.n1 + spec.n2 - 1);
  }
  const std::vector<long> hole = hole_block(spec);
  til.rows[spec.t] = merge_sorted(merge_sorted(ell, spec.padL(spec.t)), hole);
  for (long q = spec.t; q-- > 0;) {
    // minimal rising choice: p'_i = p_i
    const auto& P = til.rows[q + 1];
    til.rows[q].assign(P.begin(), P.end() - 1);
  }
  std::vector<long> rsec = merge_sorted(merge_sorted(ell, spec.padR(spec.t)), hole);
  for (long q = spec.t + 1; q <= Q; ++q) {
    const auto& P = q == spec.t + 1 ? rsec : til.rows[q - 1];
    til.rows[q].resize(P.size() - 1);
    for (std::size_t i = 0; i + 1 < P.size(); ++i) til.rows[q][i] = P[i] + 1;
  }
  return til;
}

// ---------------------------------------------------------------------------

LozengeMcmc::LozengeMcmc(const HexHoleSpec& spec, std::uint64_t seed,
                         std::uint64_t stream)
    : st_(minimal_tiling(spec)), rng_(seed, stream) {
  for (long q = 1; q < spec.B + spec.C; ++q)
    total_slots_ += q <= spec.t ? rankL(spec, q) : rankR(spec, q);
}

bool hex_move_ok(const LozengeTiling& til, long q, std::size_t idx, int dir) {
  const HexHoleSpec& s = til.spec;
  if (q < 1 || q > s.B + s.C - 1) return false;
  if (idx >= til.rows[q].size()) return false;
  const long p = til.rows[q][idx];
  const long tgt = p + dir;
  // occupancy within the row
  if (std::binary_search(til.rows[q].begin(), til.rows[q].end(), tgt))
    return false;
  if (q == s.t) {
    // fixed particles never move; free ones stay inside the window
    std::vector<long> fixed = merge_sorted(s.padL(s.t), hole_block(s));
    if (std::binary_search(fixed.begin(), fixed.end(), p)) return false;
    if (tgt < s.lo(s.t) || tgt > s.hi(s.t)) return false;
  }
  std::vector<long> moved = til.rows[q];
  moved[idx] = tgt;
  std::sort(moved.begin(), moved.end());
  if (q <= s.t) {
    if (!rise_ok(til.rows[q - 1], moved)) return false;
    if (q < s.t) {
      if (!rise_ok(moved, til.rows[q + 1])) return false;
    } else {
      // across the section: rebuild the right-padded version of line t
      std::vector<long> rsec;
      for (long x : moved)
        if (x >= s.lo(s.t) && x <= s.hi(s.t)) rsec.push_back(x);
      rsec = merge_sorted(rsec, s.padR(s.t));
      if (!fall_ok(til.rows[q + 1], rsec)) return false;
    }
  } else {
    const std::vector<long>* larger;
    std::vector<long> rsec;
    if (q - 1 == s.t) {
      for (long x : til.rows[s.t])
        if (x >= s.lo(s.t) && x <= s.hi(s.t)) rsec.push_back(x);
      rsec = merge_sorted(rsec, s.padR(s.t));
      larger = &rsec;
    } else {
      larger = &til.rows[q - 1];
    }
    if (!fall_ok(moved, *larger)) return false;
    if (!fall_ok(til.rows[q + 1], moved)) return false;
  }
  return true;
}

bool LozengeMcmc::move_ok(long q, std::size_t idx, int dir) const {
  return hex_move_ok(st_, q, idx, dir);
}

bool LozengeMcmc::step() {
  const HexHoleSpec& s = st_.spec;
  std::uint64_t r = rng_.below(static_cast<std::uint64_t>(total_slots_));
  long q = 1;
  for (;; ++q) {
    const long rk = q <= s.t ? rankL(s, q) : rankR(s, q);
    if (r < static_cast<std::uint64_t>(rk)) break;
    r -= rk;
  }
  const std::size_t idx = static_cast<std::size_t>(r);
  const int dir = rng_.coin() ? 1 : -1;
  if (!move_ok(q, idx, dir)) return false;
  st_.rows[q][idx] += dir;
  std::sort(st_.rows[q].begin(), st_.rows[q].end());
  return true;
}

void LozengeMcmc::sweep() {
  for (long i = 0; i < total_slots_; ++i) step();
}

void LozengeMcmc::run(long sweeps) {
  for (long i = 0; i < sweeps; ++i) sweep();
}

// ---------------------------------------------------------------------------

SectionSamplerHex::SectionSamplerHex(const HexHoleSpec& spec,
                                     std::uint64_t seed, std::uint64_t stream)
    : spec_(spec), rng_(seed, stream) {
  spec.validate();
  if (!spec.feasible())
    throw std::invalid_argument("SectionSamplerHex: infeasible spec");
  LozengeTiling m = minimal_tiling(spec);
  ell_ = m.section();
  const std::vector<long> hole = hole_block(spec);
  fixedL_ = merge_sorted(spec.padL(spec.t), hole);
  fixedR_ = merge_sorted(spec.padR(spec.t), hole);
}

bool SectionSamplerHex::step() {
  if (ell_.empty()) return false;
  const std::size_t i = static_cast<std::size_t>(rng_.below(ell_.size()));
  const int dir = rng_.coin() ? 1 : -1;
  const long p = ell_[i], tgt = p + dir;
  if (tgt < spec_.lo(spec_.t) || tgt > spec_.hi(spec_.t)) return false;
  if (std::binary_search(ell_.begin(), ell_.end(), tgt)) return false;
  if (std::binary_search(fixedL_.begin(), fixedL_.end(), tgt)) return false;
  if (std::binary_search(fixedR_.begin(), fixedR_.end(), tgt)) return false;
  // Metropolis ratio of the two Weyl products
  double logr = 0;
  auto add = [&](const std::vector<long>& v) {
    for (long r : v)
      if (r != p) logr += std::log(std::fabs(double(tgt - r)) /
                                   std::fabs(double(p - r)));
  };
  add(ell_);
  add(ell_);  // free particles enter both Weyl products
  add(fixedL_);
  add(fixedR_);
  if (logr < 0 && rng_.u01() >= std::exp(logr)) return false;
  ell_[i] = tgt;
  std::sort(ell_.begin(), ell_.end());
  return true;
}

void SectionSamplerHex::sweep() {
  for (std::size_t i = 0; i < ell_.size(); ++i) step();
}

void SectionSamplerHex::run(long sweeps) {
  for (long i = 0; i < sweeps; ++i) sweep();
}

}  // namespace schurtile
