// Domino tilings of a holey Aztec rectangle.
//
// The A x B rectangle is drawn diagonally; white squares sit at (x, y) with
// x = 0..B, y = 1..A, black squares at (x, y) with x = 1..B, y = 0..A.  A
// domino matches a white (x, y) to one of the four adjacent blacks:
//   N: (x, y)     E: (x, y-1)     W: (x+1, y)     S: (x+1, y-1).
// Along the column x = t the white squares outside the groups
// [a_1, b_1], ..., [a_K, b_K] (a_1 = 1, b_K = A) are removed.  Particles
// live on the white squares of north and east dominos; column x then
// carries exactly x particles for x <= t and A - B + x for x > t, and the
// per-group particle counts n_k on the section column are conserved by the
// dynamics and fixed by the spec.
#pragma once

#include "schurtile/rat.hpp"
#include "schurtile/rng.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace schurtile {

struct AztecSpec {
  long A = 1, B = 1, t = 1;
  std::vector<std::pair<long, long>> groups = {{1, 1}};  // (a_k, b_k)
  std::vector<long> n = {1};                             // filling fractions

  bool in_X(long y) const;     // y belongs to some group
  int group_of(long y) const;  // index of the group containing y, or -1
  bool is_white(long x, long y) const;  // white square present (holes cut)

  void validate() const;  // throws on structural nonsense
  bool feasible() const;  // filling fractions fillable
};

struct DominoTiling {
  AztecSpec spec;
  // One entry per white square in (x, then y) order over present whites;
  // the value is the direction code 0=N, 1=E, 2=W, 3=S of its black partner.
  std::vector<int> match;

  std::size_t wid(long x, long y) const;  // index of a present white
  int dir(long x, long y) const { return match[wid(x, y)]; }
  bool is_particle(long x, long y) const { return dir(x, y) < 2; }

  std::vector<long> particles(long x) const;  // particle rows in column x
  std::vector<long> section() const { return particles(spec.t); }
  bool valid() const;
};

// Squared-Vandermonde section law: prod_{i<j} (l_i - l_j)^2 *
// prod_i [ 1 / ((l_i - 1)! (A - l_i)!) * prod_{holes u} |l_i - u| ].
// Zero for configurations off the groups or with wrong group counts.
Rat section_weight_aztec(const AztecSpec& spec, const std::vector<long>& ell);

// Number of domino tilings of the left rectangle with section particles ell:
// 2^{t(t+1)/2} prod_{i<j} (l_j - l_i)/(j - i), t = |ell|.
Int aztec_halfcount(const std::vector<long>& ell);

// Brute-force oracle for aztec_halfcount: matchings of the left rectangle
// (whites x < t plus the particle whites at x = t, blacks x = 1..t).
Int count_left_tilings(long A, long t, const std::vector<long>& ell);

// All tilings with the spec's filling fractions; throws over `cap`.
std::vector<DominoTiling> enumerate_tilings(const AztecSpec& spec,
                                            std::size_t cap = 1000000);

// Deterministic valid tiling; section particles at the bottom of each group
// (or at the given ell).  Kuhn matching with the section column forced.
DominoTiling initial_domino_tiling(const AztecSpec& spec);
DominoTiling initial_domino_tiling(const AztecSpec& spec,
                                   const std::vector<long>& ell);

// A rotation site is a pair of neighboring whites (vertical or horizontal);
// the rotation rematches them through their two shared blacks.  (x1, y1) is
// the lower resp. left white, (x2, y2) its upper resp. right neighbor.
using RotationPair = std::array<long, 4>;

// All rotation sites of the domain; `interior_only` drops the vertical
// pairs on the section column (those move section particles).
std::vector<RotationPair> rotation_pairs(const AztecSpec& spec,
                                         bool interior_only = false);
// Whether both whites of the pair currently form a rotatable 2x2 block
// (and, on the section column, whether the rotation keeps group counts).
bool rotation_ok(const DominoTiling& til, const RotationPair& p);
void rotation_apply(DominoTiling& til, const RotationPair& p);

// Whole-domain rotation chain: uniform proposal over rotation sites,
// deterministic involution, 0/1 acceptance.  Uniform stationary law over
// tilings with the spec's filling fractions.
class DominoMcmc {
 public:
  DominoMcmc(const AztecSpec& spec, std::uint64_t seed,
             std::uint64_t stream = 0);

  bool step();
  void sweep();  // one proposal per pair
  void run(long sweeps);
  const DominoTiling& state() const { return st_; }
  const std::vector<RotationPair>& pairs() const { return pairs_; }

 private:
  DominoTiling st_;
  std::vector<RotationPair> pairs_;
  PhiloxRng rng_;
};

// Direct sampler of the section ensemble: +-1 Metropolis moves within each
// group, target proportional to section_weight_aztec.
class AztecSectionSampler {
 public:
  AztecSectionSampler(const AztecSpec& spec, std::uint64_t seed,
                      std::uint64_t stream = 0);
  bool step();
  void sweep();
  void run(long sweeps);
  const std::vector<long>& positions() const { return ell_; }

 private:
  AztecSpec spec_;
  std::vector<long> ell_;
  std::vector<long> holes_;
  PhiloxRng rng_;
};

// Two-stage kernel: a section Metropolis move (on acceptance the two
// rectangles are rebuilt by the deterministic matcher), followed by
// `interior_sweeps` whole-domain rotation sweeps that leave the section
// fixed.  The section marginal is targeted exactly; the conditional law of
// the interior is approximated by the rotation sweeps.
class DominoTwoStage {
 public:
  DominoTwoStage(const AztecSpec& spec, std::uint64_t seed,
                 std::uint64_t stream = 0, long interior_sweeps = 2);
  void sweep();  // one section sweep + interior rotation sweeps
  void run(long sweeps);
  const DominoTiling& state() const { return st_; }
  std::vector<long> section() const { return st_.section(); }

 private:
  AztecSectionSampler sec_;
  DominoTiling st_;
  std::vector<RotationPair> interior_;
  PhiloxRng rng_;
  long interior_sweeps_;
};

}  // namespace schurtile
