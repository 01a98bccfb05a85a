#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "selk/loop/program.hpp"
#include "selk/natural.hpp"

namespace selk::loop {

class CodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Node tags of the prefix byte encoding.
namespace tag {
inline constexpr std::uint8_t kProgram = 0x50;
inline constexpr std::uint8_t kZero = 0x51;
inline constexpr std::uint8_t kCopy = 0x52;
inline constexpr std::uint8_t kPush0 = 0x53;
inline constexpr std::uint8_t kPush1 = 0x54;
inline constexpr std::uint8_t kPop = 0x55;
inline constexpr std::uint8_t kIf = 0x56;
inline constexpr std::uint8_t kLoop = 0x57;
inline constexpr std::uint8_t kEach = 0x58;
inline constexpr std::uint8_t kSeq = 0x59;
inline constexpr std::uint8_t kBreak = 0x5A;
inline constexpr std::uint8_t kHalt = 0x5B;
inline constexpr std::uint8_t kNop = 0x5C;
}  // namespace tag

inline constexpr int kMaxNesting = 512;

void encode_into(const Program& p, std::vector<std::uint8_t>& out);
std::vector<std::uint8_t> encode(const Program& p);

/// Reads one program node starting at `pos` and advances `pos` past it.
Program decode_at(std::span<const std::uint8_t> bytes, std::size_t& pos);
/// Decodes a complete byte string; trailing bytes are an error.
Program decode(std::span<const std::uint8_t> bytes);

/// The program code is the natural whose big-endian bytes are 0x01 followed
/// by the encoding, so leading zero bytes cannot be lost.
Natural program_code(const Program& p);
Program from_code(const Natural& code);

}  // namespace selk::loop
