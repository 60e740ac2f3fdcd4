#pragma once

#include <cstdint>
#include <random>

namespace mnm {

/// Deterministic random stream used for all coefficient sampling.
///
/// Reproducibility is a hard contract: the same seed must regenerate the
/// same landscape bit-for-bit, on any platform, forever. The engine is
/// std::mt19937_64 (its output sequence is fully pinned by the C++
/// standard) and both output mappings below are fixed:
///
///  - uniform01(): ((next_u64() >> 11) + 0.5) * 2^-53, which lies strictly
///    inside (0,1). The 11 discarded bits leave a 53-bit lattice and the
///    +0.5 offset centres each cell, so 0.0 and 1.0 are unreachable.
///  - gaussian(): inverse-CDF transform of uniform01() using the AS241
///    rational approximation (PPND16), one uniform draw per variate.
///
/// Do not change either mapping; serialized seeds depend on them.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double strictly inside (0,1).
  double uniform01();

  /// One draw from N(0, stddev^2), stddev > 0.
  double gaussian(double stddev);

 private:
  std::mt19937_64 engine_;
};

/// Quantile function of the standard normal distribution (AS241, PPND16).
/// Accurate to about 1e-15 relative error for p in (0,1).
double inverse_normal_cdf(double p);

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t z);

/// Seed for one model of a parameter sweep.
///
/// The three coordinates are packed into one word
/// (order_slot:16 | sigma_index:16 | model_index:32), xor-folded with the
/// base seed and passed through mix64. For a fixed base seed the map is
/// injective, so distinct grid cells never share a stream and any cell can
/// be regenerated in isolation.
std::uint64_t derive_seed(std::uint64_t base_seed, unsigned order_slot,
                          unsigned sigma_index, unsigned model_index);

}  // namespace mnm
