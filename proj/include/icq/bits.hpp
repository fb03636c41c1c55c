#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace icq {

/// A fixed-length bit string x = (x_1, ..., x_n).
///
/// Storage is 0-based; `at(i)` is the 1-based accessor used by oracles.
/// `index()` / `from_index()` use the truth-table convention: x_1 is the
/// most significant bit.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n) : bits_(n, 0) {}
  explicit BitString(std::vector<std::uint8_t> bits);

  static BitString from_string(std::string_view s);
  static BitString from_index(std::size_t n, std::uint64_t index);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  bool at(int one_based) const;
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }

  std::uint64_t index() const;
  std::string to_string() const;
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  /// The sub-string x_{offset+1} .. x_{offset+length}.
  BitString slice(std::size_t offset, std::size_t length) const;

  auto operator<=>(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace icq
