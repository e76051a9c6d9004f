// Basic combinatorial vocabulary: signatures, partitions, set partitions.
//
// A signature of rank n is a weakly decreasing integer n-tuple; partitions are
// signatures with nonnegative parts (trailing zeros allowed).  Particle
// ("Maya") coordinates of a rank-n signature lam are the strictly increasing
// positions p_i = lam_{n+1-i} + i - 1, i = 1..n; we use those pervasively in
// the tiling samplers.
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace schurtile {

using Signature = std::vector<long>;           // weakly decreasing
using SetPartition = std::vector<std::vector<int>>;  // blocks of {0..n-1}

inline bool is_signature(const Signature& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] < s[i]) return false;
  return true;
}

inline bool is_partition(const Signature& s) {
  return is_signature(s) && (s.empty() || s.back() >= 0);
}

inline long weight(const Signature& s) {
  return std::accumulate(s.begin(), s.end(), 0L);
}

// mu (rank n-1) interlaces with lam (rank n): lam_i >= mu_i >= lam_{i+1}.
inline bool interlaces(const Signature& mu, const Signature& lam) {
  if (mu.size() + 1 != lam.size()) return false;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (!(lam[i] >= mu[i] && mu[i] >= lam[i + 1])) return false;
  return true;
}

// Strictly increasing particle positions of a rank-n signature, p_i >= lam_n.
inline std::vector<long> sig_to_positions(const Signature& lam) {
  const long n = static_cast<long>(lam.size());
  std::vector<long> p(n);
  for (long i = 1; i <= n; ++i) p[i - 1] = lam[n - i] + i - 1;
  return p;
}

inline Signature positions_to_sig(const std::vector<long>& p) {
  const long n = static_cast<long>(p.size());
  Signature lam(n);
  for (long i = 1; i <= n; ++i) lam[n - i] = p[i - 1] - i + 1;
  if (!is_signature(lam))
    throw std::invalid_argument("positions_to_sig: positions not increasing");
  return lam;
}

// Dominance order on partitions of the same weight:
// a <= b  iff  a_1+...+a_k <= b_1+...+b_k for all k.
enum class DomRel { Equal, LessEqual, GreaterEqual, Incomparable };

inline DomRel dominance_leq(const Signature& a, const Signature& b) {
  if (weight(a) != weight(b))
    throw std::invalid_argument("dominance_leq: weights differ");
  bool a_le_b = true, b_le_a = true;
  long pa = 0, pb = 0;
  const std::size_t k = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < k; ++i) {
    pa += i < a.size() ? a[i] : 0;
    pb += i < b.size() ? b[i] : 0;
    if (pa > pb) a_le_b = false;
    if (pb > pa) b_le_a = false;
  }
  if (a_le_b && b_le_a) return DomRel::Equal;
  if (a_le_b) return DomRel::LessEqual;
  if (b_le_a) return DomRel::GreaterEqual;
  return DomRel::Incomparable;
}

// All set partitions of {0, ..., n-1}; blocks and elements in increasing
// order, so the output is canonical.  Grows as the Bell numbers; n <= 12 or
// so is the intended regime (joint cumulants use n <= 6).
inline std::vector<SetPartition> set_partitions(int n) {
  if (n > 12) throw std::length_error("set_partitions: n too large");
  std::vector<SetPartition> out;
  SetPartition cur;
  auto rec = [&](auto&& self, int e) -> void {
    if (e == n) {
      out.push_back(cur);
      return;
    }
    const std::size_t nblocks = cur.size();
    for (std::size_t b = 0; b < nblocks; ++b) {
      cur[b].push_back(e);
      self(self, e + 1);
      cur[b].pop_back();
    }
    cur.push_back({e});
    self(self, e + 1);
    cur.pop_back();
  };
  rec(rec, 0);
  return out;
}

// All partitions of weight n (as signatures without trailing zeros).
inline std::vector<Signature> partitions_of(int n) {
  std::vector<Signature> out;
  Signature cur;
  auto rec = [&](auto&& self, int rem, long maxpart) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (long p = std::min<long>(maxpart, rem); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - static_cast<int>(p), p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

}  // namespace schurtile
