#include "tmo/random.h"

#include <limits>
#include <stdexcept>

namespace tmo {

double Rng::UniformReal() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::Uniform(double lo, double hi) {
  if (!(hi > lo)) return lo;
  const double value = lo + (hi - lo) * UniformReal();
  return value > hi ? hi : value;
}

std::size_t Rng::UniformIndex(std::size_t n) {
  if (n == 0) throw std::invalid_argument("UniformIndex: empty range");
  const std::uint64_t range = n;
  // Reject the top partial bucket so every index is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return static_cast<std::size_t>(draw % range);
}

}  // namespace tmo
