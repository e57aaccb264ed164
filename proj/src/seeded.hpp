#pragma once

#include <cstdint>
#include <random>

namespace rotquad::detail {

// Portable stream derivation; std::uniform_real_distribution is not specified
// bit-for-bit across standard libraries, so draws use the raw 64-bit output.
inline std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t attempt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(attempt)};
  return std::mt19937_64(seq);
}

// Uniform in [0, 1) from the top 53 bits.
inline double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Uniform in [-1, 1).
inline double symmetric_uniform(std::mt19937_64& gen) { return 2.0 * unit_uniform(gen) - 1.0; }

}  // namespace rotquad::detail
