#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "offload/domain.hpp"

namespace offload {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a base seed and a key path.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys)
{
  std::uint64_t h = mix64(base);
  for (auto k : keys)
    h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline double uniform(Rng& rng, const Range& r)
{
  if (r.lo == r.hi)
    return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

inline double uniform01(Rng& rng)
{
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Stream tags for derive_seed.
namespace stream {
inline constexpr std::uint64_t buyers = 1;
inline constexpr std::uint64_t sellers = 2;
inline constexpr std::uint64_t buyer_motion = 3;
inline constexpr std::uint64_t seller_motion = 4;
inline constexpr std::uint64_t link_rate = 5;
inline constexpr std::uint64_t group_solver = 6;
inline constexpr std::uint64_t replicate = 7;
}  // namespace stream

}  // namespace offload
