#include "panelfusion/types.h"

#include <algorithm>
#include <stdexcept>

namespace panelfusion {

std::string WideToString(WideCost value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  // Work with negative magnitudes so the minimum value does not overflow.
  WideCost rest = negative ? value : -value;
  std::string digits;
  while (rest != 0) {
    digits.push_back(static_cast<char>('0' - static_cast<int>(rest % 10)));
    rest /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

WideCost WideFromString(const std::string& text) {
  size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw std::invalid_argument("not an integer: '" + text + "'");
  }
  WideCost value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not an integer: '" + text + "'");
    }
    if (value > (((static_cast<WideCost>(1) << 125) - 1) / 5)) {
      throw std::invalid_argument("integer out of range: '" + text + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? -value : value;
}

}  // namespace panelfusion
