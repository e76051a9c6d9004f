// Schur polynomial evaluations: principal specializations ("dimensions"),
// Taylor expansions of normalized Schur polynomials around (1,...,1), and
// one-box Pieri steps.
#pragma once

#include "schurtile/core.hpp"
#include "schurtile/mpoly.hpp"
#include "schurtile/rat.hpp"

#include <utility>
#include <vector>

namespace schurtile {

// s_lam(1^N) via the Weyl product prod_{i<j} (lam_i - lam_j + j - i)/(j - i).
// lam may have fewer than N parts (padded with zeros) and negative parts
// (dimension is shift-invariant).
Rat schur_dim(const Signature& lam, int N);

// Same quantity from strictly increasing particle positions (rank = p.size()).
Rat schur_dim_positions(const std::vector<long>& p);

// s_lam(t, ..., t) / t-free factor: equals t^{|lam|} * dim(lam, N).
Rat principal_t(const Signature& lam, int N, const Rat& t);

// Exact evaluation of s_lam(x_1..x_N) at pairwise distinct points, via the
// bialternant ratio of determinants.  Used as an independent cross-check of
// the Jacobi-Trudi path.
Rat schur_eval(const Signature& lam, const std::vector<Rat>& x);

// Taylor expansion in y_i = x_i - 1 of s_lam(x_1..x_m, 1^{N-m}) / s_lam(1^N),
// truncated at total degree T.  Computed by a Jacobi-Trudi determinant of
// complete homogeneous polynomials; negative parts handled by the shift
// identity s_lam = (x_1...x_N)^{-c} s_{lam + c}.
struct SchurTaylor {
  Signature lam;
  int N = 0;
  int m = 0;
  MPoly poly;  // nvars = m, constant term 1
};
SchurTaylor schur_taylor(const Signature& lam, int N, int m, int T);

// One-box Pieri step: distribution over mu = lam + box (within N rows) with
// probability dim(mu, N) / (N * dim(lam, N)).
std::vector<std::pair<Signature, Rat>> pieri_box(const Signature& lam, int N);

// Signatures obtained from lam by adding a horizontal (row) or vertical
// (column) strip of exactly p boxes, keeping at most N rows.
std::vector<Signature> add_horizontal_strips(const Signature& lam, int p,
                                             int N);
std::vector<Signature> add_vertical_strips(const Signature& lam, int p, int N);

}  // namespace schurtile
