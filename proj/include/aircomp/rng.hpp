#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace aircomp {

/// Counter-based generator (Philox 4x32-10, Salmon et al. 2011) keyed by a
/// 64-bit seed with a 64-bit stream id. Streams keyed by (seed, trial index)
/// are statistically independent, so parallel Monte Carlo trials reproduce
/// the same numbers regardless of scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_{static_cast<std::uint32_t>(stream),
                static_cast<std::uint32_t>(stream >> 32)} {}

  std::uint32_t next_u32() {
    if (sub_ == 4) {
      block_ = generate_block();
      ++block_index_;
      sub_ = 0;
    }
    return block_[sub_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  /// Uniform on the open interval (0, 1); never returns an endpoint, so
  /// -log() and Box-Muller stay finite. 52-bit granularity keeps the +0.5
  /// offset exact (at 53 bits it can round up to 1.0).
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  /// Uniform on (lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform_open();
  }

  /// Standard exponential, mean 1.
  double exponential() { return -std::log(uniform_open()); }

  /// Standard normal via Box-Muller; pairs are cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
    const double angle = 2.0 * std::numbers::pi * uniform_open();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Integer uniform on [0, n), n >= 1. Modulo bias is negligible for the
  /// small ranges used here (instance sizes, index picks).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

 private:
  std::array<std::uint32_t, 4> generate_block() const {
    constexpr std::uint32_t kMulA = 0xD2511F53u;
    constexpr std::uint32_t kMulB = 0xCD9E8D57u;
    constexpr std::uint32_t kKeyA = 0x9E3779B9u;
    constexpr std::uint32_t kKeyB = 0xBB67AE85u;
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(block_index_),
        static_cast<std::uint32_t>(block_index_ >> 32), stream_[0],
        stream_[1]};
    std::uint32_t k0 = key_[0];
    std::uint32_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t prod0 = std::uint64_t{kMulA} * ctr[0];
      const std::uint64_t prod1 = std::uint64_t{kMulB} * ctr[2];
      const std::uint32_t lo0 = static_cast<std::uint32_t>(prod0);
      const std::uint32_t hi0 = static_cast<std::uint32_t>(prod0 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(prod1);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(prod1 >> 32);
      ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
      k0 += kKeyA;
      k1 += kKeyB;
    }
    return ctr;
  }

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> stream_;
  std::uint64_t block_index_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int sub_ = 4;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace aircomp
