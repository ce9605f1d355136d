#pragma once

// Counter-based uniform stream: value i of a seeded stream is a pure
// function of (seed, i), so runs are reproducible and cells are
// independent of evaluation order.

#include <cstdint>

namespace nabular {

class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : seed_(seed) {}

  // splitmix64 finalizer over seed ^ counter
  double at(std::uint64_t counter) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (counter + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;  // [0, 1)
  }

 private:
  std::uint64_t seed_;
};

}  // namespace nabular
