#pragma once

#include <cstdint>

namespace torusq {

// Counter-based generator: the stream for (seed, index) does not depend on
// which thread draws it, so parallel sampling stays reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
    return g.next();
  }

 private:
  std::uint64_t state_;
};

}  // namespace torusq
