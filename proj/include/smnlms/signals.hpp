#pragma once

// Deterministic excitation and noise sources.
//
// Generator: SplitMix64 evaluated in counter mode. A stream is keyed by
// (seed, tag); the 64-bit word for lane l at stream position p is
//
//   key  = mix64(seed ^ mix64(tag))
//   word = mix64(key + (2p + l + 1) * 0x9E3779B97F4A7C15)
//
// where mix64 is the SplitMix64 output finalizer. Every sample is therefore a
// pure function of (seed, tag, position) and traces are reproducible across
// builds on the same libm.
//
// BPSK draws the sign from the top bit of lane 0. Gaussian draws use the
// cosine branch of Box-Muller with u1 = (lane0 >> 11 + 1) * 2^-53 in (0, 1]
// and u2 = (lane1 >> 11) * 2^-53 in [0, 1).

#include <cmath>
#include <cstdint>
#include <numbers>

#include "smnlms/error.hpp"

namespace smnlms {

inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Fixed tags separating the streams of one scenario.
enum class StreamTag : std::uint64_t {
  kInput = 0x1,
  kNoise = 0x2,
  kSystem = 0x3,
};

class SeededSource {
 public:
  explicit SeededSource(std::uint64_t seed, std::uint64_t tag = 0, std::uint64_t position = 0) noexcept
      : seed_(seed), tag_(tag), key_(mix64(seed ^ mix64(tag))), position_(position) {}

  SeededSource(std::uint64_t seed, StreamTag tag, std::uint64_t position = 0) noexcept
      : SeededSource(seed, static_cast<std::uint64_t>(tag), position) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t tag() const noexcept { return tag_; }
  std::uint64_t position() const noexcept { return position_; }

  // Raw word at the current position; does not advance.
  std::uint64_t word(unsigned lane) const noexcept {
    constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    return mix64(key_ + (2 * position_ + lane + 1) * kGolden);
  }

  void advance() noexcept { ++position_; }

 private:
  std::uint64_t seed_;
  std::uint64_t tag_;
  std::uint64_t key_;
  std::uint64_t position_;
};

struct NoiseSpec {
  double variance = 0.0;  // sigma_n^2
};

// Uniform double in [0, 1) from the top 53 bits.
inline double unit_uniform(std::uint64_t w) noexcept {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

inline double bpsk_sample(SeededSource& src) noexcept {
  const double v = (src.word(0) >> 63) != 0 ? 1.0 : -1.0;
  src.advance();
  return v;
}

inline double standard_normal_sample(SeededSource& src) {
  const double u1 = static_cast<double>((src.word(0) >> 11) + 1) * 0x1.0p-53;
  const double u2 = unit_uniform(src.word(1));
  src.advance();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline double gaussian_sample(SeededSource& src, NoiseSpec spec) {
  if (!(spec.variance >= 0.0) || !std::isfinite(spec.variance)) {
    throw InvalidConfig("noise variance must be finite and >= 0");
  }
  const double z = standard_normal_sample(src);
  if (spec.variance == 0.0) return 0.0;
  return std::sqrt(spec.variance) * z;
}

}  // namespace smnlms
