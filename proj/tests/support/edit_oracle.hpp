#pragma once

// Brute-force edit distance over {insert, delete, substitute, adjacent
// transpose}: breadth-first search on the graph of strings, independent of
// the DP implementation it checks. Intermediate strings never need to grow
// beyond max(len(a), len(b)) + 1 characters.

#include <cstddef>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

namespace aliasmine::testoracle {

inline std::vector<std::string> edit_neighbors(const std::string& s, const std::string& alphabet,
                                               std::size_t max_len) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size(); ++i) {  // delete
        std::string t = s;
        t.erase(i, 1);
        out.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < s.size(); ++i)  // substitute
        for (char c : alphabet) {
            if (s[i] == c)
                continue;
            std::string t = s;
            t[i] = c;
            out.push_back(std::move(t));
        }
    if (s.size() < max_len)
        for (std::size_t i = 0; i <= s.size(); ++i)  // insert
            for (char c : alphabet) {
                std::string t = s;
                t.insert(t.begin() + static_cast<std::ptrdiff_t>(i), c);
                out.push_back(std::move(t));
            }
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {  // transpose
        if (s[i] == s[i + 1])
            continue;
        std::string t = s;
        std::swap(t[i], t[i + 1]);
        out.push_back(std::move(t));
    }
    return out;
}

inline std::size_t bfs_edit_distance(const std::string& a, const std::string& b,
                                     const std::string& alphabet) {
    if (a == b)
        return 0;
    const std::size_t max_len = std::max(a.size(), b.size()) + 1;
    std::unordered_map<std::string, std::size_t> dist;
    std::queue<std::string> frontier;
    dist[a] = 0;
    frontier.push(a);
    while (!frontier.empty()) {
        std::string cur = std::move(frontier.front());
        frontier.pop();
        std::size_t d = dist[cur];
        for (auto& next : edit_neighbors(cur, alphabet, max_len)) {
            if (dist.count(next))
                continue;
            if (next == b)
                return d + 1;
            dist[next] = d + 1;
            frontier.push(std::move(next));
        }
    }
    return static_cast<std::size_t>(-1);
}

// Every string over `alphabet` with length <= max_len.
inline std::vector<std::string> all_strings(const std::string& alphabet, std::size_t max_len) {
    std::vector<std::string> out = {""};
    std::size_t start = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = start; i < end; ++i)
            for (char c : alphabet)
                out.push_back(out[i] + c);
        start = end;
    }
    return out;
}

}  // namespace aliasmine::testoracle
