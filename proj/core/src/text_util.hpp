#pragma once

// Internal text helpers shared by the serialization units. Not installed.

#include <texkit/error.hpp>

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

namespace texkit::detail {

/// Shortest decimal form that parses back to exactly the same double.
inline std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view text, const std::string& where) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        raise(Errc::CorruptFile, where + ": '" + std::string(text) + "' is not a number");
    }
    return value;
}

} // namespace texkit::detail
