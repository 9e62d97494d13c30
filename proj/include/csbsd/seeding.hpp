#pragma once

#include <cstdint>

namespace csbsd {

// splitmix64 finalizer; used to derive independent RNG stream seeds from
// (master seed, cell, trial, stream) so trials can run in any order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial,
                                 std::uint64_t stream) {
  std::uint64_t h = splitmix64(master ^ 0xA5A5A5A5DEADBEEFull);
  h = splitmix64(h ^ cell);
  h = splitmix64(h ^ trial);
  h = splitmix64(h ^ stream);
  return h;
}

}  // namespace csbsd
