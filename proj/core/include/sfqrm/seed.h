#ifndef SFQRM_SEED_H
#define SFQRM_SEED_H

#include <cstdint>

namespace sfqrm {

// splitmix64 finalizer; full-period mixing of a 64-bit state.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent named sub-streams of a master seed. Realization seeds are a
// pure function of (seed, stream, index), so results never depend on the
// order in which workers pick up realizations.
enum class SeedStream : std::uint64_t {
  kFaults = 1,
  kMessages = 2,
  kSpread = 3,
  kNoise = 4,
};

inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream,
                                 std::uint64_t index) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
  return splitmix64(h ^ index);
}

// Uniform double in [0, 1) from a 64-bit word, 53 bits of precision.
inline double to_unit_interval(std::uint64_t word) {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace sfqrm

#endif  // SFQRM_SEED_H
