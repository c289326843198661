#include "optomech/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "optomech/error.hpp"

namespace optomech {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buffer{};
    const auto [end, ec] =
        std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                      std::chars_format::general, 17);
    if (ec != std::errc{}) throw Error(ErrorKind::Io, "failed to format number");
    return {buffer.data(), end};
}

double parse_double(const std::string& text) {
    if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw Error(ErrorKind::Config, "not a number: '" + text + "'");
    }
    return value;
}

}  // namespace optomech
