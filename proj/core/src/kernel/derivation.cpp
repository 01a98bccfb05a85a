#include "selk/kernel/derivation.hpp"

#include <limits>

namespace selk::kernel {

std::uint64_t budget_for(const WhitelistEntry& w, std::uint64_t input_bits) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t base = input_bits > kMax - 16 ? kMax : input_bits + 16;
  std::uint64_t acc = w.coeff;
  for (int i = 0; i < w.exponent; ++i) {
    if (acc != 0 && base > kMax / acc) return kMax;
    acc *= base;
  }
  return acc;
}

}  // namespace selk::kernel
