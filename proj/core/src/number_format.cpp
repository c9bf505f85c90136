#include "darl/number_format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace darl {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, kSignificantDigits);
  return std::string(buf.data(), res.ptr);
}

double round_significant(double value) {
  if (!std::isfinite(value)) return value;
  const std::string text = format_number(value);
  double out = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), out);
  return out;
}

}  // namespace darl
