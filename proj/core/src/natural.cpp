#include "selk/natural.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace selk {

namespace {

// Little-endian 32-bit limbs; used only for decimal conversion.
std::vector<std::uint32_t> to_limbs(const Natural& n) {
  std::vector<std::uint32_t> limbs((n.bit_length() + 31) / 32, 0);
  for (std::size_t i = 0; i < n.bit_length(); ++i) {
    if (n.bit(i)) limbs[i / 32] |= (1U << (i % 32));
  }
  return limbs;
}

Natural from_limbs(const std::vector<std::uint32_t>& limbs) {
  Natural out;
  for (std::size_t i = limbs.size(); i-- > 0;) {
    for (int b = 31; b >= 0; --b) out.push_low((limbs[i] >> b) & 1U);
  }
  return out;
}

}  // namespace

Natural::Natural(std::uint64_t value) {
  for (int b = 63; b >= 0; --b) push_low((value >> b) & 1U);
}

Natural Natural::from_bytes_be(std::span<const std::uint8_t> bytes) {
  Natural out;
  std::size_t i = 0;
  while (i < bytes.size() && bytes[i] == 0) ++i;
  if (i == bytes.size()) return out;
  const std::size_t nbytes = bytes.size() - i;
  out.words_ = std::make_shared<std::vector<std::uint64_t>>((nbytes * 8 + 63) / 64 + 1, 0);
  // The first byte loses its leading zero bits; the rest are copied whole.
  const int lead = std::countl_zero(static_cast<std::uint8_t>(bytes[i]));
  for (int b = 7 - lead; b >= 0; --b) out.push_low((bytes[i] >> b) & 1U);
  for (std::size_t k = i + 1; k < bytes.size(); ++k) {
    const std::uint8_t byte = bytes[k];
    const std::size_t pos = out.nbits_;
    auto& w = *out.words_;
    if (w.size() * 64 < pos + 8) w.resize(w.size() * 2 + 1, 0);
    const std::size_t word = pos >> 6;
    const std::size_t off = pos & 63;
    if (off <= 56) {
      w[word] |= static_cast<std::uint64_t>(byte) << (56 - off);
    } else {
      w[word] |= static_cast<std::uint64_t>(byte) >> (off - 56);
      w[word + 1] |= static_cast<std::uint64_t>(byte) << (120 - off);
    }
    out.nbits_ += 8;
  }
  return out;
}

std::optional<Natural> Natural::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  Natural out;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    for (char c : text.substr(2)) {
      int v;
      if (c >= '0' && c <= '9') v = c - '0';
      else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
      else return std::nullopt;
      for (int b = 3; b >= 0; --b) out.push_low((v >> b) & 1);
    }
    return out;
  }
  std::vector<std::uint32_t> limbs;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    std::uint64_t carry = static_cast<std::uint64_t>(c - '0');
    for (auto& limb : limbs) {
      const std::uint64_t v = static_cast<std::uint64_t>(limb) * 10 + carry;
      limb = static_cast<std::uint32_t>(v);
      carry = v >> 32;
    }
    if (carry != 0) limbs.push_back(static_cast<std::uint32_t>(carry));
  }
  return from_limbs(limbs);
}

std::vector<std::uint8_t> Natural::to_bytes_be() const {
  std::vector<std::uint8_t> out((nbits_ + 7) / 8, 0);
  for (std::size_t i = 0; i < nbits_; ++i) {
    if (bit(i)) out[out.size() - 1 - i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  }
  return out;
}

std::string Natural::to_decimal() const {
  if (is_zero()) return "0";
  auto limbs = to_limbs(*this);
  std::string digits;
  while (!limbs.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = limbs.size(); i-- > 0;) {
      const std::uint64_t cur = (rem << 32) | limbs[i];
      limbs[i] = static_cast<std::uint32_t>(cur / 1000000000U);
      rem = cur % 1000000000U;
    }
    while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
    for (int k = 0; k < 9; ++k) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
      if (limbs.empty() && rem == 0) break;
    }
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::string Natural::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  if (is_zero()) return "0x0";
  std::string out = "0x";
  const std::size_t ndigits = (nbits_ + 3) / 4;
  for (std::size_t d = ndigits; d-- > 0;) {
    int v = 0;
    for (int b = 3; b >= 0; --b) v = (v << 1) | (bit(d * 4 + b) ? 1 : 0);
    out.push_back(kDigits[v]);
  }
  return out;
}

std::optional<std::uint64_t> Natural::to_u64() const {
  if (nbits_ > 64) return std::nullopt;
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < nbits_; ++j) v = (v << 1) | (bit_from_top(j) ? 1U : 0U);
  return v;
}

void Natural::make_unique() {
  if (!words_) {
    words_ = std::make_shared<std::vector<std::uint64_t>>(4, 0);
  } else if (words_.use_count() > 1) {
    const std::size_t used = (nbits_ + 63) / 64;
    auto fresh = std::make_shared<std::vector<std::uint64_t>>(std::max<std::size_t>(used + 2, 4), 0);
    std::copy_n(words_->begin(), used, fresh->begin());
    words_ = std::move(fresh);
  }
}

void Natural::push_low(bool b) {
  if (nbits_ == 0 && !b) return;
  make_unique();
  auto& w = *words_;
  const std::size_t word = nbits_ >> 6;
  if (word >= w.size()) w.resize(w.size() * 2, 0);
  if (b) w[word] |= (std::uint64_t{1} << (63 - (nbits_ & 63)));
  ++nbits_;
}

void Natural::pop_low() {
  if (nbits_ == 0) return;
  make_unique();
  --nbits_;
  (*words_)[nbits_ >> 6] &= ~(std::uint64_t{1} << (63 - (nbits_ & 63)));
}

void Natural::clear() {
  if (words_ && words_.use_count() == 1) {
    std::fill_n(words_->begin(), (nbits_ + 63) / 64, 0);
  } else {
    words_.reset();
  }
  nbits_ = 0;
}

bool operator==(const Natural& a, const Natural& b) {
  if (a.nbits_ != b.nbits_) return false;
  if (a.nbits_ == 0 || a.words_ == b.words_) return true;
  const std::size_t used = (a.nbits_ + 63) / 64;
  return std::equal(a.words_->begin(), a.words_->begin() + static_cast<std::ptrdiff_t>(used),
                    b.words_->begin());
}

std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
  if (a.nbits_ != b.nbits_) return a.nbits_ <=> b.nbits_;
  const std::size_t used = (a.nbits_ + 63) / 64;
  for (std::size_t i = 0; i < used; ++i) {
    if ((*a.words_)[i] != (*b.words_)[i]) return (*a.words_)[i] <=> (*b.words_)[i];
  }
  return std::strong_ordering::equal;
}

std::size_t Natural::hash() const {
  std::uint64_t h = 1469598103934665603ULL ^ nbits_;
  const std::size_t used = (nbits_ + 63) / 64;
  for (std::size_t i = 0; i < used; ++i) {
    h ^= (*words_)[i];
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace selk
