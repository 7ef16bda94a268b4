#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace spikedclt {

// Philox4x32-10 counter-based generator. A block of four 32-bit words is a
// pure function of (key, counter), so per-trial streams are reproducible
// independently of execution order and thread count.
class Philox4x32 {
 public:
  explicit Philox4x32(std::uint64_t key) : key_(key) {}

  std::array<std::uint32_t, 4> block(std::uint64_t ctr_hi, std::uint64_t ctr_lo) const {
    std::uint32_t c0 = static_cast<std::uint32_t>(ctr_lo);
    std::uint32_t c1 = static_cast<std::uint32_t>(ctr_lo >> 32);
    std::uint32_t c2 = static_cast<std::uint32_t>(ctr_hi);
    std::uint32_t c3 = static_cast<std::uint32_t>(ctr_hi >> 32);
    std::uint32_t k0 = static_cast<std::uint32_t>(key_);
    std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ULL * c0;
      const std::uint64_t p1 = 0xCD9E8D57ULL * c2;
      const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    return {c0, c1, c2, c3};
  }

 private:
  std::uint64_t key_;
};

// Sequential view of the counter-based stream for one Monte Carlo trial.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial_index)
      : gen_(seed), trial_(trial_index) {}

  // Uniform in (0, 1), 53-bit resolution, never exactly 0.
  double uniform() {
    if (word_ >= 4) refill();
    const std::uint64_t hi = buf_[word_++];
    if (word_ >= 4) refill();
    const std::uint64_t lo = buf_[word_++];
    const std::uint64_t u = (hi << 32) | lo;
    return static_cast<double>(u >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  // Standard normal via Box-Muller (explicit, for bit-stable streams).
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  // Standard complex Gaussian: Re and Im each N(0, 1/2).
  std::complex<double> complex_gaussian() {
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-std::log(u1));  // scaled so each part has var 1/2
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  void refill() {
    const auto b = gen_.block(trial_, block_++);
    for (int i = 0; i < 4; ++i) buf_[i] = b[i];
    word_ = 0;
  }

  Philox4x32 gen_;
  std::uint64_t trial_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int word_ = 4;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spikedclt
