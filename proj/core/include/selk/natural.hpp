#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace selk {

/// Arbitrary-precision natural number stored as a packed bit string.
///
/// Bits are kept most-significant first, so appending or removing the low
/// bit is amortized O(1). Storage is shared between copies and cloned on the
/// first mutation; copying a large value is cheap until it is modified.
class Natural {
 public:
  Natural() = default;
  explicit Natural(std::uint64_t value);

  static Natural from_bytes_be(std::span<const std::uint8_t> bytes);
  /// Accepts decimal digits, or hex with a 0x prefix. Returns nullopt on junk.
  static std::optional<Natural> parse(std::string_view text);

  /// Minimal big-endian byte string; empty for zero.
  std::vector<std::uint8_t> to_bytes_be() const;
  std::string to_decimal() const;
  std::string to_hex() const;
  std::optional<std::uint64_t> to_u64() const;

  std::size_t bit_length() const { return nbits_; }
  bool is_zero() const { return nbits_ == 0; }
  bool low_bit() const { return nbits_ != 0 && bit_from_top(nbits_ - 1); }
  /// Bit i counted from the least significant end.
  bool bit(std::size_t i) const { return i < nbits_ && bit_from_top(nbits_ - 1 - i); }

  /// *this = 2 * *this + b
  void push_low(bool b);
  /// *this = *this / 2
  void pop_low();
  /// *this = 0, keeping unshared storage for reuse.
  void clear();

  friend bool operator==(const Natural& a, const Natural& b);
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b);

  std::size_t hash() const;

 private:
  bool bit_from_top(std::size_t j) const {
    return ((*words_)[j >> 6] >> (63 - (j & 63))) & 1U;
  }
  void make_unique();

  // Invariant: bits at positions >= nbits_ are zero; the first bit is 1.
  std::shared_ptr<std::vector<std::uint64_t>> words_;
  std::size_t nbits_ = 0;
};

struct NaturalHash {
  std::size_t operator()(const Natural& n) const { return n.hash(); }
};

}  // namespace selk
