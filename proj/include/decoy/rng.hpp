#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace decoy {

/// All randomness in a run flows from one master seed through named
/// sub-streams, so individual components (pool, grouping, shuffle, pprg)
/// can be ablated without perturbing each other's draws.
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministically derives the seed of a named sub-stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view stream_name) {
  std::uint64_t state = master ^ fnv1a64(stream_name);
  splitmix64(state);
  return splitmix64(state);
}

inline Rng make_rng(std::uint64_t master, std::string_view stream_name) {
  return Rng{derive_seed(master, stream_name)};
}

}  // namespace decoy
