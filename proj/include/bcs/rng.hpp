#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace bcs {

// Seeded random source used by every sampler in the library.
//
// Bits come from std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniforms take the top 53 bits; normals use the Box-Muller
// transform (cos branch first, the sin branch is cached for the next call).
// Distribution objects from <random> are avoided on purpose since their
// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform();
  // Standard normal.
  double normal();
  // Uniform integer on [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Derives an independent stream seed from a master seed and two indices
// (e.g. p-grid index and trial index). Pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

}  // namespace bcs
