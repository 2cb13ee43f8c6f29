#pragma once

#include <string>
#include <string_view>

namespace aliasmine {

// Replaces invalid UTF-8 byte sequences with U+FFFD. Never fails.
std::string utf8_lossy(std::string_view bytes);

bool utf8_valid(std::string_view bytes);

// Minimal glob matcher: `*` matches any run, `?` a single character.
// Comparison is ASCII case-insensitive.
bool glob_match(std::string_view pattern, std::string_view text);

std::string to_lower(std::string_view s);

}  // namespace aliasmine
