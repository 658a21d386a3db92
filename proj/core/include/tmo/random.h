#ifndef TMO_RANDOM_H_
#define TMO_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace tmo {

// Seeded random stream. The draw functions are defined on top of the raw
// mt19937_64 output rather than the <random> distributions, so a given seed
// yields the same sequence with every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double UniformReal();

  // Uniform in [lo, hi]; returns lo when hi <= lo.
  double Uniform(double lo, double hi);

  // Uniform over {0, ..., n-1}. Requires n >= 1.
  std::size_t UniformIndex(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tmo

#endif  // TMO_RANDOM_H_
