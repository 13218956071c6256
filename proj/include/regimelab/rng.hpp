#pragma once

#include <cstdint>

namespace regimelab {

/**
 * pcg32 (O'Neill's PCG-XSH-RR 64/32). Pure integer arithmetic, so the
 * sequence is identical on every platform for a given (seed, stream).
 * Distinct stream ids select independent sequences for the same seed;
 * the samplers in this project each draw from their own fixed stream so
 * fixtures can be reproduced from other languages.
 */
class Pcg32 {
 public:
  explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1) with 53-bit resolution.
  double next_double();

  // Unbiased integer in [0, n). Requires n > 0.
  std::uint32_t next_below(std::uint32_t n);

  // Standard normal via the inverse CDF, so one uniform draw maps to one
  // normal deviate deterministically.
  double next_normal();

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

// Inverse of the standard normal CDF (Wichura's AS 241, double precision).
// Requires p in (0, 1).
double normal_quantile(double p);

}  // namespace regimelab
