#ifndef DIGRAPHON_RNG_HPP
#define DIGRAPHON_RNG_HPP

#include <cstdint>

namespace digraphon {

// splitmix64; reproducible across platforms independently of <random>
// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in {0, ..., n-1}, n >= 1
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  bool next_bool(double p) { return next_double() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace digraphon

#endif  // DIGRAPHON_RNG_HPP
