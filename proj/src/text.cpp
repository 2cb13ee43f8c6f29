#include "aliasmine/text.hpp"

#include <cctype>

namespace aliasmine {

namespace {

constexpr std::string_view kReplacement = "\xEF\xBF\xBD";

bool is_continuation(unsigned char c) {
    return (c & 0xC0) == 0x80;
}

// Returns the length of a valid UTF-8 sequence starting at s[i], or 0.
std::size_t valid_sequence_length(std::string_view s, std::size_t i) {
    unsigned char c0 = static_cast<unsigned char>(s[i]);
    if (c0 < 0x80)
        return 1;
    auto cont = [&](std::size_t k) {
        return i + k < s.size() && is_continuation(static_cast<unsigned char>(s[i + k]));
    };
    auto byte_at = [&](std::size_t k) { return static_cast<unsigned char>(s[i + k]); };
    if (c0 >= 0xC2 && c0 <= 0xDF)
        return cont(1) ? 2 : 0;
    if (c0 == 0xE0)
        return cont(1) && byte_at(1) >= 0xA0 && cont(2) ? 3 : 0;
    if (c0 >= 0xE1 && c0 <= 0xEC)
        return cont(1) && cont(2) ? 3 : 0;
    if (c0 == 0xED)
        return cont(1) && byte_at(1) <= 0x9F && cont(2) ? 3 : 0;
    if (c0 >= 0xEE && c0 <= 0xEF)
        return cont(1) && cont(2) ? 3 : 0;
    if (c0 == 0xF0)
        return cont(1) && byte_at(1) >= 0x90 && cont(2) && cont(3) ? 4 : 0;
    if (c0 >= 0xF1 && c0 <= 0xF3)
        return cont(1) && cont(2) && cont(3) ? 4 : 0;
    if (c0 == 0xF4)
        return cont(1) && byte_at(1) <= 0x8F && cont(2) && cont(3) ? 4 : 0;
    return 0;
}

}  // namespace

std::string utf8_lossy(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        std::size_t len = valid_sequence_length(bytes, i);
        if (len == 0) {
            out += kReplacement;
            ++i;
        } else {
            out.append(bytes.substr(i, len));
            i += len;
        }
    }
    return out;
}

bool utf8_valid(std::string_view bytes) {
    std::size_t i = 0;
    while (i < bytes.size()) {
        if (static_cast<unsigned char>(bytes[i]) < 0x80) {  // ASCII fast path
            ++i;
            continue;
        }
        std::size_t len = valid_sequence_length(bytes, i);
        if (len == 0)
            return false;
        i += len;
    }
    return true;
}

namespace {

char lower_ascii(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool glob_match_at(std::string_view pat, std::size_t pi, std::string_view txt, std::size_t ti) {
    while (pi < pat.size()) {
        char p = pat[pi];
        if (p == '*') {
            while (pi < pat.size() && pat[pi] == '*')
                ++pi;
            if (pi == pat.size())
                return true;
            for (std::size_t k = ti; k <= txt.size(); ++k)
                if (glob_match_at(pat, pi, txt, k))
                    return true;
            return false;
        }
        if (ti == txt.size())
            return false;
        if (p != '?' && lower_ascii(p) != lower_ascii(txt[ti]))
            return false;
        ++pi;
        ++ti;
    }
    return ti == txt.size();
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view text) {
    return glob_match_at(pattern, 0, text, 0);
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = lower_ascii(c);
    return out;
}

}  // namespace aliasmine
