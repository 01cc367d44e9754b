#include "levinlab/bits.hpp"

#include <cctype>
#include <stdexcept>

namespace levinlab {

BitString::BitString(std::string_view text) {
  digits_.reserve(text.size());
  for (char ch : text) {
    if (ch == '0' || ch == '1') {
      digits_.push_back(ch);
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      throw std::invalid_argument("BitString: unexpected character '" +
                                  std::string(1, ch) + "'");
    }
  }
}

BitString BitString::repeat(bool bit, std::size_t count) {
  BitString out;
  out.digits_.assign(count, bit ? '1' : '0');
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  BitString out;
  out.digits_.resize(width, '0');
  for (std::size_t i = 0; i < width; ++i) {
    if ((value >> i) & 1U) out.digits_[width - 1 - i] = '1';
  }
  return out;
}

bool BitString::starts_with(const BitString& prefix) const noexcept {
  return prefix.size() <= size() &&
         digits_.compare(0, prefix.size(), prefix.digits_) == 0;
}

BitString BitString::prefix(std::size_t n) const {
  BitString out;
  out.digits_ = digits_.substr(0, n);
  return out;
}

BitString BitString::with(bool bit) const {
  BitString out = *this;
  out.push_back(bit);
  return out;
}

std::string BitString::grouped(std::size_t width) const {
  if (width == 0) return digits_;
  std::string out;
  out.reserve(digits_.size() + digits_.size() / width);
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i > 0 && i % width == 0) out.push_back(' ');
    out.push_back(digits_[i]);
  }
  return out;
}

}  // namespace levinlab
