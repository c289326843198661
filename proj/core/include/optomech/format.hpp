#pragma once

#include <string>

namespace optomech {

/// Locale-independent shortest-safe text for a double: 17 significant
/// digits, '.' decimal point, "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double value);

/// Inverse of format_double; throws Error(Config) on malformed text.
double parse_double(const std::string& text);

}  // namespace optomech
