#pragma once

// Independent reference arithmetic for tests, built on boost::multiprecision.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <string>

#include "selk/natural.hpp"

namespace oracle {

using Big = boost::multiprecision::cpp_int;

inline Big to_big(const selk::Natural& n) { return Big(n.to_decimal()); }

inline selk::Natural from_big(const Big& b) { return *selk::Natural::parse(b.str()); }

inline std::size_t bitlen(Big b) {
  std::size_t n = 0;
  while (b > 0) {
    b >>= 1;
    ++n;
  }
  return n;
}

inline Big pair(Big x, Big y) {
  Big z = 0;
  for (unsigned i = 0; x > 0 || y > 0; ++i) {
    if ((x & 1) != 0) boost::multiprecision::bit_set(z, 2 * i);
    if ((y & 1) != 0) boost::multiprecision::bit_set(z, 2 * i + 1);
    x >>= 1;
    y >>= 1;
  }
  return z;
}

inline Big random_big(std::mt19937_64& rng, unsigned max_bits) {
  const unsigned bits = static_cast<unsigned>(rng() % (max_bits + 1));
  Big b = 0;
  for (unsigned i = 0; i < bits; ++i) b = (b << 1) | Big(rng() & 1);
  return b;
}

}  // namespace oracle
