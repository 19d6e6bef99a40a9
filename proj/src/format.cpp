#include "liemech/format.hpp"

#include "liemech/error.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace liemech {

std::string format_double(double x) {
    if (x == 0.0) return "0";  // also folds -0
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text, std::string_view what) {
    const std::string_view t = trim(text);
    std::string_view body = t;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(body.data(), body.data() + body.size(), value);
    if (body.empty() || res.ec != std::errc() || res.ptr != body.data() + body.size()) {
        throw Error(ErrorKind::ParseError, "cannot parse '" + std::string(t) + "' as a number for " +
                                               std::string(what));
    }
    return value;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                                  : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return text.substr(first, last - first + 1);
}

}  // namespace liemech
