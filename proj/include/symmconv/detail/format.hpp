#pragma once

#include <array>
#include <charconv>
#include <string>

namespace symmconv::detail {

// Shortest decimal form that parses back to the same double; locale-free.
inline std::string format_shortest(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

} // namespace symmconv::detail
