#pragma once

// Random alias-statement generator with known ground truth. The generator
// decides the structure first (commands, env prefixes, sudo, argument
// tokens, separators), renders it with randomized spacing and quoting, and
// keeps the canonical form + counts it chose, so tests can check the parser
// against what was actually generated instead of re-deriving it.

#include <cstdint>
#include <cstring>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aliasmine/parser.hpp"

namespace aliasmine::testgen {

struct GeneratedPair {
    std::string name;
    std::string rendered;         // name='...' as it appears in the statement
    std::string canonical_value;  // single-space join, quotes resolved
    int command_count = 0;
    int separator_count = 0;
    std::vector<std::vector<std::string>> arg_tokens;  // per command
};

struct GeneratedStatement {
    std::string text;  // full `alias ...` statement
    std::vector<GeneratedPair> pairs;
};

class StatementGen {
public:
    explicit StatementGen(std::uint64_t seed) : rng_(seed) {}

    GeneratedStatement next() {
        GeneratedStatement stmt;
        stmt.text = "alias";
        int pairs = 1 + static_cast<int>(pick(3));
        for (int p = 0; p < pairs; ++p) {
            stmt.pairs.push_back(make_pair());
            stmt.text += ' ';
            stmt.text += stmt.pairs.back().rendered;
        }
        return stmt;
    }

private:
    std::mt19937_64 rng_;

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

    std::string spaces() { return std::string(1 + pick(3), ' '); }

    std::string from_charset(const char* chars, std::size_t len_max, std::size_t len_min = 1) {
        std::size_t n = static_cast<std::size_t>(::strlen(chars));
        std::string out;
        std::size_t len = len_min + pick(len_max - len_min + 1);
        for (std::size_t i = 0; i < len; ++i)
            out += chars[pick(n)];
        return out;
    }

    std::string identifier() {
        std::string out = from_charset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_", 1);
        out += from_charset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_", 7, 0);
        return out;
    }

    // Command words: no '=', no leading dash, never the sudo keyword.
    std::string name_token() {
        std::string t = from_charset("abcdefghijklmnopqrstuvwxyz0123456789_./~+:@", 9);
        if (t == "sudo")
            t += "x";
        return t;
    }

    // Argument material: '=' allowed (--color=auto style), quotes never.
    std::string plain_token() {
        return from_charset("abcdefghijklmnopqrstuvwxyz0123456789-_./=~+:@%^*", 9);
    }

    // One argument; returns {rendered, expected token}.
    std::pair<std::string, std::string> argument(char inner_quote) {
        switch (pick(4)) {
            case 0: {
                std::string t = plain_token();
                return {t, t};
            }
            case 1: {  // fully quoted with internal whitespace
                std::string content = plain_token() + " " + plain_token();
                return {inner_quote + content + inner_quote, content};
            }
            case 2: {  // adjacent plain+quoted, like -d' '
                std::string head = plain_token();
                std::string content = plain_token() + " ";
                return {head + inner_quote + content + inner_quote, head + content};
            }
            default: {
                std::string t = "-" + plain_token();
                return {t, t};
            }
        }
    }

    GeneratedPair make_pair() {
        GeneratedPair pair;
        pair.name = identifier();
        const char outer = pick(2) ? '"' : '\'';
        const char inner = outer == '\'' ? '"' : '\'';

        pair.command_count = 1 + static_cast<int>(pick(3));
        pair.separator_count = pair.command_count - 1;

        static constexpr Separator kSeps[] = {Separator::Pipe,       Separator::PipeErr,
                                              Separator::And,        Separator::Or,
                                              Separator::Background, Separator::Seq};
        std::string rendered;
        std::string canonical;
        auto emit = [&](const std::string& rendered_part, const std::string& canonical_part) {
            if (!rendered.empty())
                rendered += spaces();
            rendered += rendered_part;
            if (!canonical.empty())
                canonical += ' ';
            canonical += canonical_part;
        };

        for (int c = 0; c < pair.command_count; ++c) {
            if (pick(4) == 0) {
                std::string env = identifier() + "=" + plain_token();
                emit(env, env);
            }
            if (pick(5) == 0)
                emit("sudo", "sudo");
            std::string name = name_token();
            emit(name, name);

            std::vector<std::string> tokens;
            int args = static_cast<int>(pick(4));
            for (int a = 0; a < args; ++a) {
                auto [arg_rendered, token] = argument(inner);
                emit(arg_rendered, token);
                tokens.push_back(token);
            }
            pair.arg_tokens.push_back(std::move(tokens));

            if (c + 1 < pair.command_count) {
                Separator sep = kSeps[pick(std::size(kSeps))];
                rendered += spaces();
                rendered += separator_token(sep);
                canonical += ' ';
                canonical += separator_token(sep);
            }
        }

        pair.canonical_value = canonical;
        pair.rendered = pair.name + "=" + outer + rendered + outer;
        return pair;
    }
};

}  // namespace aliasmine::testgen
