#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "selk/kernel/derivation.hpp"

namespace selk::kernel {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tag {
inline constexpr std::uint8_t kZero = 0x10;
inline constexpr std::uint8_t kB0 = 0x11;
inline constexpr std::uint8_t kB1 = 0x12;
inline constexpr std::uint8_t kVar = 0x13;
inline constexpr std::uint8_t kNum = 0x14;
inline constexpr std::uint8_t kAp = 0x15;
inline constexpr std::uint8_t kEq = 0x20;
inline constexpr std::uint8_t kNot = 0x21;
inline constexpr std::uint8_t kImp = 0x22;
inline constexpr std::uint8_t kAnd = 0x23;
inline constexpr std::uint8_t kAll = 0x24;
inline constexpr std::uint8_t kEx = 0x25;
inline constexpr std::uint8_t kDerivation = 0x30;
inline constexpr std::uint8_t kLogic = 0x40;
inline constexpr std::uint8_t kEqAx = 0x41;
inline constexpr std::uint8_t kNumAx = 0x42;
inline constexpr std::uint8_t kExtra = 0x43;
inline constexpr std::uint8_t kMP = 0x44;
inline constexpr std::uint8_t kGen = 0x45;
inline constexpr std::uint8_t kCompute = 0x46;
inline constexpr std::uint8_t kTheory = 0x60;
}  // namespace tag

inline constexpr int kMaxSyntaxDepth = 4000;

using Bytes = std::vector<std::uint8_t>;

void encode(const Term& t, Bytes& out);
void encode(const Formula& f, Bytes& out);
void encode(const Justification& j, Bytes& out);
void encode(const Derivation& d, Bytes& out);
/// The name is not part of the encoding.
void encode(const TheorySpec& t, Bytes& out);

template <typename T>
Bytes to_bytes(const T& x) {
  Bytes out;
  encode(x, out);
  return out;
}

Term decode_term(std::span<const std::uint8_t> in, std::size_t& pos);
Formula decode_formula(std::span<const std::uint8_t> in, std::size_t& pos);
Derivation decode_derivation(std::span<const std::uint8_t> in, std::size_t& pos);
TheorySpec decode_theory(std::span<const std::uint8_t> in, std::size_t& pos);

/// Whole-buffer decoders: trailing bytes are an error.
Term term_from_bytes(std::span<const std::uint8_t> in);
Formula formula_from_bytes(std::span<const std::uint8_t> in);
Derivation derivation_from_bytes(std::span<const std::uint8_t> in);
TheorySpec theory_from_bytes(std::span<const std::uint8_t> in);

}  // namespace selk::kernel
