/*
 * Copyright (c) Contributors to the semiop project.
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace semiop {

/// Counted splittable pseudo-random generator (splitmix64 core).
///
/// Every random quantity in the library flows from a single 64-bit seed
/// through Rng::split streams, so identical seeds reproduce identical
/// results bit-for-bit on one platform. We deliberately avoid the
/// std::uniform_* distributions: their output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Derives an independent stream from (seed, stream index).
  static Rng split(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1] — safe as a log() argument.
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double next_gaussian() {
    const double u = next_unit_open();
    const double v = next_unit();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586477 * v);
  }

  std::complex<double> next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re, im};
  }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t next_below(std::uint64_t bound) {
    return next_u64() % bound;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace semiop
