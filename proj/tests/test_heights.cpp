#include "doctest.h"

#include "schurtile/heights.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace schurtile;

namespace {

HexHoleSpec plain_spec(long A, long B, long C, long t) {
  HexHoleSpec s;
  s.A = A;
  s.B = B;
  s.C = C;
  s.t = t;
  s.D = 0;
  s.E = 0;
  s.n1 = (s.hi(t) - s.lo(t) + 1) - A;
  s.n2 = 0;
  return s;
}

HexHoleSpec holey_spec() {
  HexHoleSpec s;
  s.A = 3;
  s.B = 3;
  s.C = 3;
  s.t = 3;
  s.D = 1;
  s.E = 2;
  s.n1 = 1;
  s.n2 = 1;
  return s;
}

AztecSpec diamond2() {
  AztecSpec s;
  s.A = 2;
  s.B = 2;
  s.t = 1;
  s.groups = {{1, 2}};
  s.n = {1};
  return s;
}

AztecSpec holey43(long t, std::vector<long> n) {
  AztecSpec s;
  s.A = 4;
  s.B = 3;
  s.t = t;
  s.groups = {{1, 2}, {4, 4}};
  s.n = std::move(n);
  return s;
}

// Height profile of lozenge line q at integer levels, for move tests.
std::vector<long> profile(const LozengeTiling& til, long q, long L) {
  std::vector<long> out;
  for (long m = til.spec.lo(q); m <= til.spec.hi(q) + 1; ++m)
    out.push_back(height(til, static_cast<double>(q) / L,
                         static_cast<double>(m) / L, L));
  return out;
}

}  // namespace

TEST_CASE("lozenge height basics on the minimal tiling") {
  for (const HexHoleSpec& s :
       {plain_spec(2, 2, 2, 2), plain_spec(3, 2, 1, 2), holey_spec()}) {
    const long L = s.B + s.C;
    LozengeTiling til = minimal_tiling(s);
    REQUIRE(til.valid());
    for (long q = 0; q <= s.B + s.C; ++q) {
      std::vector<long> prof = profile(til, q, L);
      // Top of the window is above every particle.
      CHECK(prof.back() == 0);
      // Bottom counts the whole physical row; steps are 0 or 1.
      for (std::size_t i = 0; i + 1 < prof.size(); ++i) {
        const long d = prof[i] - prof[i + 1];
        CHECK(d >= 0);
        CHECK(d <= 1);
      }
    }
  }
}

TEST_CASE("lozenge height counts the hole particles") {
  const HexHoleSpec s = holey_spec();
  const long L = 6;
  LozengeTiling til = minimal_tiling(s);
  // The hole occupies slot lo(t)+E on line t; the profile must step there
  // regardless of the random particles.
  const long hl = s.hole_lo();
  const double x = static_cast<double>(s.t) / L;
  CHECK(height(til, x, static_cast<double>(hl) / L, L) -
            height(til, x, static_cast<double>(hl + 1) / L, L) ==
        1);
}

TEST_CASE("single move shifts the height on exactly one level") {
  for (const HexHoleSpec& s : {plain_spec(2, 2, 2, 2), holey_spec()}) {
    const long L = s.B + s.C;
    auto all = enumerate_tilings(s);
    for (const auto& til : all) {
      for (long q = 1; q < s.B + s.C; ++q) {
        for (std::size_t i = 0; i < til.rows[q].size(); ++i) {
          for (int dir : {-1, +1}) {
            if (!hex_move_ok(til, q, i, dir)) continue;
            LozengeTiling moved = til;
            moved.rows[q][i] += dir;
            std::sort(moved.rows[q].begin(), moved.rows[q].end());
            REQUIRE(moved.valid());
            std::vector<long> before = profile(til, q, L);
            std::vector<long> after = profile(moved, q, L);
            long ndiff = 0;
            for (std::size_t m = 0; m < before.size(); ++m)
              if (before[m] != after[m]) {
                ++ndiff;
                CHECK(std::abs(before[m] - after[m]) == 1);
              }
            CHECK(ndiff == 1);
            // Other lines are untouched.
            for (long r = 0; r <= s.B + s.C; ++r)
              if (r != q) CHECK(profile(til, r, L) == profile(moved, r, L));
          }
        }
      }
    }
  }
}

TEST_CASE("lozenge observable: power sum equals height integral exactly") {
  for (const HexHoleSpec& s :
       {plain_spec(2, 2, 2, 2), plain_spec(3, 2, 1, 2), holey_spec()}) {
    auto all = enumerate_tilings(s);
    REQUIRE(!all.empty());
    for (const auto& til : all) {
      for (long L : {1L, 2L}) {
        // Integer lines on both sides of the section, plus a fractional x
        // that lands on line t with the right-hand convention.
        std::vector<double> xs;
        for (long q = 1; q < s.B + s.C; ++q)
          xs.push_back(static_cast<double>(q) / L);
        if (L == 2) xs.push_back((s.t + 0.5) / L * 1.0);
        for (double x : xs)
          for (long k = 0; k <= 3; ++k)
            CHECK(observable_p(til, x, k, L) ==
                  observable_p_integral(til, x, k, L));
      }
    }
  }
}

TEST_CASE("lozenge observable rejects out-of-domain lines") {
  LozengeTiling til = minimal_tiling(plain_spec(2, 2, 2, 2));
  CHECK_THROWS(observable_p(til, 0.0, 0, 1));
  CHECK_THROWS(observable_p(til, 4.0, 0, 1));
  CHECK_THROWS(height(til, -0.5, 0.0, 1));
  CHECK_THROWS(height(til, 1.0, 100.0, 1));
}

TEST_CASE("domino height basics") {
  const AztecSpec s = holey43(2, {1, 1});
  const long L = s.B;
  auto all = enumerate_tilings(s);
  REQUIRE(!all.empty());
  for (const auto& til : all) {
    for (long q = 0; q <= s.B; ++q) {
      const double x = static_cast<double>(q) / L;
      // Deterministic per-column count at the bottom level.
      const long want = q <= s.t ? q : s.A - s.B + q;
      CHECK(height(til, x, 0.0, L) == want);
      CHECK(height(til, x, static_cast<double>(s.A) / L, L) == 0);
      for (long r = 0; r < s.A; ++r) {
        const long d = height(til, x, static_cast<double>(r) / L, L) -
                       height(til, x, static_cast<double>(r + 1) / L, L);
        CHECK(d >= 0);
        CHECK(d <= 1);
      }
    }
  }
}

TEST_CASE("domino observable: power sum equals height integral exactly") {
  for (const AztecSpec& s : {diamond2(), holey43(2, {1, 1}), holey43(1, {0, 1})}) {
    auto all = enumerate_tilings(s);
    REQUIRE(!all.empty());
    for (const auto& til : all) {
      for (long L : {1L, 2L}) {
        std::vector<double> xs;
        for (long q = 0; q <= s.B; ++q)
          xs.push_back(static_cast<double>(q) / L);
        if (L == 2) xs.push_back((s.t + 0.5) / L * 1.0);
        for (double x : xs)
          for (long k = 0; k <= 3; ++k)
            CHECK(observable_p(til, x, k, L) ==
                  observable_p_integral(til, x, k, L));
      }
    }
  }
}

TEST_CASE("domino observable at an empty column vanishes") {
  const AztecSpec s = diamond2();
  for (const auto& til : enumerate_tilings(s))
    for (long k = 0; k <= 3; ++k) CHECK(observable_p(til, 0.0, k, 1) == Rat(0));
}
