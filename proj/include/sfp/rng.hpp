#pragma once

#include <cmath>
#include <cstdint>

namespace sfp {

/// Philox4x32-10 counter-based generator. All randomness in the toolkit flows
/// from one 64-bit seed through this engine, so runs are reproducible across
/// platforms and independent streams can be split by counter.
class Philox {
 public:
  explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        ctr_hi_(stream),
        ctr_lo_(0),
        buf_pos_(4) {}

  std::uint32_t next_u32() {
    if (buf_pos_ == 4) refill();
    return buf_[buf_pos_++];
  }

  std::uint64_t next_u64() {
    const std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Box-Muller (deterministic, no libc distribution).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Uniform integer in [0, n) by rejection; n must be positive.
  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

 private:
  static std::uint32_t mul_hi(std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) >> 32);
  }

  void refill() {
    std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo_);
    std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo_ >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi_);
    std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi_ >> 32);
    std::uint32_t k0 = key0_;
    std::uint32_t k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      const std::uint32_t hi0 = mul_hi(kMulA, c0);
      const std::uint32_t lo0 = kMulA * c0;
      const std::uint32_t hi1 = mul_hi(kMulB, c2);
      const std::uint32_t lo1 = kMulB * c2;
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += kWeylA;
      k1 += kWeylB;
    }
    buf_[0] = c0;
    buf_[1] = c1;
    buf_[2] = c2;
    buf_[3] = c3;
    ++ctr_lo_;
    buf_pos_ = 0;
  }

  static constexpr std::uint32_t kMulA = 0xD2511F53;
  static constexpr std::uint32_t kMulB = 0xCD9E8D57;
  static constexpr std::uint32_t kWeylA = 0x9E3779B9;
  static constexpr std::uint32_t kWeylB = 0xBB67AE85;

  std::uint32_t key0_, key1_;
  std::uint64_t ctr_hi_, ctr_lo_;
  std::uint32_t buf_[4] = {0, 0, 0, 0};
  int buf_pos_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sfp
