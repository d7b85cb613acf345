#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include "qxp/core/types.hpp"

namespace qxp {

// Deterministic seed-derivation scheme used everywhere randomness appears.
//
// One master seed is the root. A substream is named by a list of 64-bit tags
// (e.g. platform-label hash, draw index, input index) and derived by iterated
// SplitMix64 absorption:
//
//     x = master; for each tag t: x = mix64(x ^ t)
//
// The derived value seeds an independent mt19937_64. Because a stream's seed
// depends only on (master, tags), results are reproducible regardless of
// execution order, threading, or which process runs the circuit.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master,
                          std::initializer_list<std::uint64_t> tags);
// FNV-1a, for folding text labels into the tag space.
std::uint64_t hash_label(std::string_view text);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53 random bits; avoids the implementation-defined
  // std::uniform_real_distribution so streams are stable across toolchains.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection sampling (no modulo bias).
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 eng_;
};

// Draws `shots` outcomes from a normalized distribution by inverse-CDF
// binary search and returns per-outcome counts. Deterministic given the rng
// state.
Eigen::VectorXd sample_outcomes(const RealVector& probs, std::int64_t shots,
                                Rng& rng);

}  // namespace qxp
