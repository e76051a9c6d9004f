// Height functions of both tiling families and the polynomial slice
// observables built from them.
//
// Lozenge heights count the horizontal lozenges of a vertical line at or
// above a given level (hole lozenges included; they are deterministic and
// vanish under centering).  Domino heights count the particles of a column
// strictly above the lattice level.
//
// observable_p is the slice observable: on the left part of the domain
//   -1/(k+1) sum_i (P_i / L)^{k+1}
// over the padding-extended particle positions of the line x, and with the
// reflected coordinate (A+B-P resp. A+1-P) on the right part; the line
// x = t uses the left convention.  observable_p_integral evaluates the same
// quantity by exact integration of the height staircase (the padding
// particles supply the deterministic boundary terms); the two must agree
// identically on every tiling.
#pragma once

#include "schurtile/rat.hpp"
#include "schurtile/sampler_aztec.hpp"
#include "schurtile/sampler_hex.hpp"

namespace schurtile {

// Number of horizontal lozenges on line floor(L x) at height >= L y
// (physical window only, hole included).  Throws outside the domain.
long height(const LozengeTiling& til, double x, double y, long L);

// Number of particles in column floor(L x) strictly above floor(L y).
long height(const DominoTiling& til, double x, double y, long L);

Rat observable_p(const LozengeTiling& til, double x, long k, long L);
Rat observable_p_integral(const LozengeTiling& til, double x, long k, long L);

Rat observable_p(const DominoTiling& til, double x, long k, long L);
Rat observable_p_integral(const DominoTiling& til, double x, long k, long L);

}  // namespace schurtile
