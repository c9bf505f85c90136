#pragma once

#include <string>

namespace darl {

inline constexpr int kSignificantDigits = 15;

/// Locale-independent "%.15g"-style text for a finite double.
std::string format_number(double value);

/// value rounded to 15 significant digits, so that shortest-round-trip
/// printers emit the same text as format_number.
double round_significant(double value);

}  // namespace darl
