// Counter-based random number generation (Philox4x32-10).
//
// Every stochastic routine in the library draws from a PhiloxRng constructed
// from (seed, stream).  Because the generator is a pure function of
// (key, counter), runs are bit-reproducible across platforms for a fixed seed
// and stream layout, and independent chains just use distinct stream ids.
#pragma once

#include <cstdint>
#include <limits>

namespace schurtile {

class PhiloxRng {
 public:
  using result_type = std::uint64_t;

  PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        ctr2_(static_cast<std::uint32_t>(stream)),
        ctr3_(static_cast<std::uint32_t>(stream >> 32)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<std::uint64_t>::max();
  }

  result_type operator()() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    std::uint32_t c0 = static_cast<std::uint32_t>(block_);
    std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
    ++block_;
    std::uint32_t x0 = c0, x1 = c1, x2 = ctr2_, x3 = ctr3_;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * x0;
      const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * x2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t y0 = hi1 ^ x1 ^ k0;
      const std::uint32_t y1 = lo1;
      const std::uint32_t y2 = hi0 ^ x3 ^ k1;
      const std::uint32_t y3 = lo0;
      x0 = y0;
      x1 = y1;
      x2 = y2;
      x3 = y3;
      k0 += kWeyl0;
      k1 += kWeyl1;
    }
    spare_ = (static_cast<std::uint64_t>(x3) << 32) | x2;
    have_ = true;
    return (static_cast<std::uint64_t>(x1) << 32) | x0;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double u01() { return ((*this)() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), n >= 1, by rejection (unbiased).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t v;
    do {
      v = (*this)();
    } while (v >= limit);
    return v % n;
  }

  bool coin() { return ((*this)() & 1) != 0; }

 private:
  static constexpr std::uint32_t kMulA = 0xD2511F53u;
  static constexpr std::uint32_t kMulB = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  std::uint32_t key0_, key1_;
  std::uint32_t ctr2_, ctr3_;  // stream id occupies the top counter half
  std::uint64_t block_ = 0;    // low counter half, incremented per block
  std::uint64_t spare_ = 0;
  bool have_ = false;
};

}  // namespace schurtile
