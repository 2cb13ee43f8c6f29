#pragma once

#include <cstddef>
#include <string_view>

namespace aliasmine {

// Unrestricted Damerau-Levenshtein distance: minimum number of insertions,
// deletions, substitutions and adjacent transpositions turning `a` into `b`.
// Case-sensitive, byte-wise.
std::size_t damerau_levenshtein(std::string_view a, std::string_view b);

}  // namespace aliasmine
