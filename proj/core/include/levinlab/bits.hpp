#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace levinlab {

/// A finite sequence of binary digits.
///
/// Stored as ASCII '0'/'1' so that the default ordering is lexicographic,
/// which is the tie-break order used by every enumerator in the library.
class BitString {
 public:
  BitString() = default;

  /// Parses '0'/'1' characters; ASCII whitespace is skipped. Throws
  /// std::invalid_argument on any other character.
  explicit BitString(std::string_view text);

  /// Builds a string of `count` copies of `bit`.
  static BitString repeat(bool bit, std::size_t count);

  /// Big-endian binary digits of `value`, exactly `width` of them.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  bool operator[](std::size_t i) const noexcept { return digits_[i] == '1'; }

  void push_back(bool bit) { digits_.push_back(bit ? '1' : '0'); }
  void append(const BitString& other) { digits_ += other.digits_; }
  void reserve(std::size_t n) { digits_.reserve(n); }

  /// True when `prefix` is a (not necessarily proper) prefix of *this.
  bool starts_with(const BitString& prefix) const noexcept;
  BitString prefix(std::size_t n) const;
  BitString with(bool bit) const;

  const std::string& str() const noexcept { return digits_; }

  /// Digits split into space-separated groups, e.g. "0111 1111".
  std::string grouped(std::size_t width = 4) const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString&,
                                          const BitString&) = default;

 private:
  std::string digits_;
};

inline BitString operator""_bits(const char* text, std::size_t n) {
  return BitString(std::string_view(text, n));
}

}  // namespace levinlab

template <>
struct std::hash<levinlab::BitString> {
  std::size_t operator()(const levinlab::BitString& b) const noexcept {
    return std::hash<std::string>{}(b.str());
  }
};
