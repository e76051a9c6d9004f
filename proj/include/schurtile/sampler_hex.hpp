// Lozenge tilings of an A x B x C hexagon with a D x D rhombic hole centered
// on the vertical line x = t, hole bottom at height E over the bottom border.
//
// Representation: in sheared coordinates the hexagon occupies, on the line
// x = q, the slots [lo(q), hi(q)] with lo = max(q-C, 0), hi = min(q+A, A+B)-1.
// Horizontal lozenges are particles.  Rows left of the section are padded
// with deterministic particles to rank q (bottom block [0, q-C-1], top block
// [A+B, A+q-1]); rows right of it to rank B+C-q (bottom [-(C-q), -1], top
// [min(q+A, A+B), A+B-1]).  Adjacent padded rows then satisfy a pure
// interlacing rule: rising (left, rank grows with q)
//     p'_i in [p_i, p_{i+1} - 1]
// and falling (right, rank shrinks)
//     p'_i in [p_i + 1, p_{i+1}],
// where p is the larger row.  The hole contributes D deterministic particles
// on the section row; all frozen cascades (hexagon corners and the rhombus
// around the hole) follow from the interlacing constraints automatically.
#pragma once

#include "schurtile/rat.hpp"
#include "schurtile/rng.hpp"

#include <cstdint>
#include <vector>

namespace schurtile {

struct HexHoleSpec {
  long A = 1, B = 1, C = 1;  // side lengths
  long D = 0;                // hole size
  long t = 1;                // section line through the hole center
  long E = 0;                // hole bottom height over the bottom border
  long n1 = 0, n2 = 0;       // free horizontal lozenges below / above the hole

  long lo(long q) const { return std::max(q - C, 0L); }
  long hi(long q) const { return std::min(q + A, A + B) - 1; }
  long hole_lo() const { return lo(t) + E; }  // first hole slot on line t

  // Deterministic padding of line q when used as a left (rank q) or right
  // (rank B+C-q) pattern row.
  std::vector<long> padL(long q) const;
  std::vector<long> padR(long q) const;

  // Structural sanity (throws) and fillability of the filling fractions.
  void validate() const;
  bool feasible() const;
};

struct LozengeTiling {
  HexHoleSpec spec;
  // rows[q], q = 0..B+C, sorted ascending; rows q <= t carry left padding,
  // rows q > t right padding.  Row t also implicitly owns the right padding
  // padR(t) for checks across the section.
  std::vector<std::vector<long>> rows;

  std::vector<long> section() const;  // free section positions (the ell)
  bool valid() const;
};

// dim(lambda(ell), t) * dim(lambda~(ell), B+C-t) for the two padded section
// signatures; zero for infeasible ell.
Rat section_weight_hex(const HexHoleSpec& spec, const std::vector<long>& ell);

// Whether the single-particle move rows[q][idx] += dir is legal from til.
bool hex_move_ok(const LozengeTiling& til, long q, std::size_t idx, int dir);

// All tilings (empty if infeasible); throws if more than `cap` states.
std::vector<LozengeTiling> enumerate_tilings(const HexHoleSpec& spec,
                                             std::size_t cap = 1000000);

LozengeTiling minimal_tiling(const HexHoleSpec& spec);

// Single-particle (+-1) Glauber dynamics, uniform stationary law.
class LozengeMcmc {
 public:
  LozengeMcmc(const HexHoleSpec& spec, std::uint64_t seed,
              std::uint64_t stream = 0);

  // One uniform proposal (row, index, direction); returns true if accepted.
  bool step();
  void sweep();  // one proposal per particle slot
  void run(long sweeps);
  const LozengeTiling& state() const { return st_; }

  // Whether a hypothetical move is acceptable from the current state; public
  // so tests can probe detailed balance directly.
  bool move_ok(long q, std::size_t idx, int dir) const;

 private:
  LozengeTiling st_;
  PhiloxRng rng_;
  long total_slots_ = 0;
};

// Direct sampler for the section ensemble ell with target proportional to
// section_weight_hex, one +-1 Metropolis move at a time (float weights via
// Weyl dimension ratios; O(t) per proposal).  Used for desk-scale section
// statistics where full-tiling chains are too slow.
class SectionSamplerHex {
 public:
  SectionSamplerHex(const HexHoleSpec& spec, std::uint64_t seed,
                    std::uint64_t stream = 0);
  bool step();
  void sweep();
  void run(long sweeps);
  const std::vector<long>& positions() const { return ell_; }

 private:
  HexHoleSpec spec_;
  std::vector<long> ell_;
  std::vector<long> fixedL_, fixedR_;  // padding+hole as seen by each side
  PhiloxRng rng_;
};

}  // namespace schurtile
