#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace l1match {

// 64-bit avalanche mix (splitmix64 finalizer).  Used for seed derivation and
// for per-repetition symbol hashing.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seedable generator with 64-bit uniform output.  Independent streams are
// derived from (seed, stream index), never by sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

  std::uint64_t u64() { return gen_(); }

  // Exactly uniform on [0, bound).  Power-of-two bounds take the mask path;
  // general bounds use rejection sampling.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below(0)");
    if ((bound & (bound - 1)) == 0) return u64() & (bound - 1);
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t v;
    do {
      v = u64() & mask;
    } while (v >= bound);
    return v;
  }

  double unit() {  // [0, 1)
    return static_cast<double>(u64() >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

  Rng derive(std::uint64_t stream) const {
    return Rng(mix64(seed_ ^ mix64(stream + 0x6a09e667f3bcc909ULL)));
  }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

}  // namespace l1match
