#include "doctest.h"
#include "schurtile/core.hpp"
#include "schurtile/rng.hpp"

#include <map>
#include <set>

using namespace schurtile;

TEST_CASE("set_partitions counts match Bell numbers") {
  const long bell[] = {1, 1, 2, 5, 15, 52, 203, 877};
  for (int n = 0; n <= 7; ++n) {
    auto parts = set_partitions(n);
    CHECK(static_cast<long>(parts.size()) == bell[n]);
    // each partition covers {0..n-1} exactly once
    for (const auto& sp : parts) {
      std::set<int> seen;
      for (const auto& b : sp) {
        CHECK(!b.empty());
        for (int e : b) CHECK(seen.insert(e).second);
      }
      CHECK(static_cast<int>(seen.size()) == n);
    }
  }
}

TEST_CASE("interlacing") {
  CHECK(interlaces({2, 1}, {3, 2, 0}));
  CHECK(interlaces({3, 0}, {3, 2, 0}));
  CHECK(!interlaces({4, 1}, {3, 2, 0}));
  CHECK(!interlaces({1, 1}, {3, 2, 0}));
  CHECK(interlaces({}, {5}));
  CHECK(interlaces({-1}, {0, -2}));
}

TEST_CASE("signature <-> particle positions") {
  Signature lam = {3, 1, 1, 0};
  auto p = sig_to_positions(lam);
  CHECK(p == std::vector<long>{0, 2, 3, 6});
  CHECK(positions_to_sig(p) == lam);
  CHECK(sig_to_positions({0, 0, 0}) == std::vector<long>{0, 1, 2});
}

TEST_CASE("dominance order") {
  CHECK(dominance_leq({1, 1, 1}, {3}) == DomRel::LessEqual);
  CHECK(dominance_leq({2, 1}, {3}) == DomRel::LessEqual);
  CHECK(dominance_leq({3}, {2, 1}) == DomRel::GreaterEqual);
  CHECK(dominance_leq({2, 2}, {3, 1}) == DomRel::LessEqual);
  CHECK(dominance_leq({2, 1, 1}, {2, 1, 1}) == DomRel::Equal);
  CHECK(dominance_leq({3, 1, 1, 1}, {2, 2, 2}) == DomRel::Incomparable);
  CHECK_THROWS(dominance_leq({2}, {1}));
}

TEST_CASE("partitions_of") {
  CHECK(partitions_of(0).size() == 1);
  CHECK(partitions_of(4).size() == 5);
  CHECK(partitions_of(7).size() == 15);
}

TEST_CASE("philox is reproducible and streams are independent") {
  PhiloxRng a(12345, 0), b(12345, 0), c(12345, 1);
  std::vector<std::uint64_t> va, vb, vc;
  for (int i = 0; i < 64; ++i) {
    va.push_back(a());
    vb.push_back(b());
    vc.push_back(c());
  }
  CHECK(va == vb);
  CHECK(va != vc);

  PhiloxRng u(7, 3);
  for (int i = 0; i < 1000; ++i) {
    double x = u.u01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(u.below(17) < 17);
  }
  // crude equidistribution sanity check
  PhiloxRng v(99, 0);
  double s = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) s += v.u01();
  CHECK(std::abs(s / n - 0.5) < 0.01);
}
