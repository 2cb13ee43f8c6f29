#include "aliasmine/edit_distance.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace aliasmine {

// Full algorithm with the `da` last-seen table, not the restricted
// optimal-string-alignment variant: a transposed pair may be edited again,
// and the result is a true metric.
std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    if (m == 0)
        return n;
    if (n == 0)
        return m;

    const std::size_t inf = m + n;
    const std::size_t width = n + 2;
    std::vector<std::size_t> d((m + 2) * width);
    auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * width + j]; };

    at(0, 0) = inf;
    for (std::size_t i = 0; i <= m; ++i) {
        at(i + 1, 0) = inf;
        at(i + 1, 1) = i;
    }
    for (std::size_t j = 0; j <= n; ++j) {
        at(0, j + 1) = inf;
        at(1, j + 1) = j;
    }

    std::array<std::size_t, 256> last_row_of{};  // per byte value, 0 = unseen
    for (std::size_t i = 1; i <= m; ++i) {
        std::size_t last_match_col = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            const std::size_t k = last_row_of[static_cast<unsigned char>(b[j - 1])];
            const std::size_t l = last_match_col;
            std::size_t cost = 1;
            if (a[i - 1] == b[j - 1]) {
                cost = 0;
                last_match_col = j;
            }
            const std::size_t substitution = at(i, j) + cost;
            const std::size_t insertion = at(i + 1, j) + 1;
            const std::size_t deletion = at(i, j + 1) + 1;
            const std::size_t transposition = at(k, l) + (i - k - 1) + 1 + (j - l - 1);
            at(i + 1, j + 1) =
                std::min({substitution, insertion, deletion, transposition});
        }
        last_row_of[static_cast<unsigned char>(a[i - 1])] = i;
    }
    return at(m + 1, n + 1);
}

}  // namespace aliasmine
