#include "icq/bits.hpp"

#include <stdexcept>

#include "icq/errors.hpp"

namespace icq {

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw std::invalid_argument("BitString: entries must be 0 or 1");
  }
}

BitString BitString::from_string(std::string_view s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw ParseError("bit string may only contain 0 and 1: '" + std::string(s) + "'");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return BitString(std::move(bits));
}

BitString BitString::from_index(std::size_t n, std::uint64_t index) {
  if (n > 64) throw std::invalid_argument("BitString::from_index: n > 64");
  BitString x(n);
  for (std::size_t i = 0; i < n; ++i) x.bits_[i] = (index >> (n - 1 - i)) & 1U;
  return x;
}

bool BitString::at(int one_based) const {
  if (one_based < 1 || static_cast<std::size_t>(one_based) > bits_.size()) {
    throw std::out_of_range("BitString::at: index " + std::to_string(one_based) + " outside 1.." +
                            std::to_string(bits_.size()));
  }
  return bits_[static_cast<std::size_t>(one_based - 1)] != 0;
}

std::uint64_t BitString::index() const {
  if (bits_.size() > 64) throw std::invalid_argument("BitString::index: more than 64 bits");
  std::uint64_t idx = 0;
  for (auto b : bits_) idx = (idx << 1) | b;
  return idx;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > bits_.size()) throw std::out_of_range("BitString::slice out of range");
  return BitString(std::vector<std::uint8_t>(bits_.begin() + static_cast<std::ptrdiff_t>(offset),
                                             bits_.begin() + static_cast<std::ptrdiff_t>(offset + length)));
}

}  // namespace icq
