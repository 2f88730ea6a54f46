#pragma once

#include <cstddef>
#include <cstdint>

namespace bellsq {

// Every data-parallel kernel in the library has a serial reference path and
// an OpenMP path. Both visit the same deterministic work decomposition, so
// their results agree exactly.
enum class ExecPolicy { Serial, Parallel };

// splitmix64 finalizer; derives independent per-chunk seeds from a base seed.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Samples per RNG stream in randomized suites.
inline constexpr std::size_t kChunkSize = 1024;

template <class Fn>
void for_each_chunk(std::size_t n_chunks, ExecPolicy policy, Fn&& fn) {
  const auto n = static_cast<long long>(n_chunks);
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long k = 0; k < n; ++k) fn(static_cast<std::size_t>(k));
  } else {
    for (long long k = 0; k < n; ++k) fn(static_cast<std::size_t>(k));
  }
}

}  // namespace bellsq
