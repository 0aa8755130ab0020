#include "rarbench/strings.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace rarbench {

std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) {
                words.push_back(cur);
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) words.push_back(cur);
    return words;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out.append(sep);
        out.append(parts[i]);
    }
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

int count_occurrences(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return 0;
    int n = 0;
    size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
        ++n;
        pos += needle.size();
    }
    return n;
}

long long to_cents(double value) {
    return std::llround(value * 100.0);
}

std::string format_percent(double value) {
    long long cents = to_cents(value);
    char buf[32];
    long long whole = cents / 100;
    long long frac = cents % 100;
    if (cents < 0) {
        whole = -(-cents / 100);
        frac = -cents % 100;
        if (whole == 0) {
            std::snprintf(buf, sizeof(buf), "-0.%02lld", frac);
            return buf;
        }
    }
    std::snprintf(buf, sizeof(buf), "%lld.%02lld", whole, frac);
    return buf;
}

}  // namespace rarbench
