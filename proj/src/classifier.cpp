#include "aliasmine/classifier.hpp"

#include <algorithm>
#include <cctype>

#include "aliasmine/edit_distance.hpp"
#include "aliasmine/text.hpp"

namespace aliasmine {

namespace {

constexpr std::string_view kPracticeNames[kPracticeCount] = {
    "Nicknaming",        "AbbreviatingSubcommands", "BookmarkingLocations",
    "SubstitutingCommands", "OverridingDefaults",   "ColorizingOutput",
    "ElevatingPrivilege",   "TransformingData",     "ChainingSubcommands",
};


bool looks_like_subcommand(std::string_view token) {
    if (token.empty() || !std::islower(static_cast<unsigned char>(token[0])))
        return false;
    return std::all_of(token.begin(), token.end(), [](char c) {
        return std::islower(static_cast<unsigned char>(c)) ||
               std::isdigit(static_cast<unsigned char>(c)) || c == '-';
    });
}

// Liberal per the definition: four dot-separated digit runs anywhere in the
// string.
bool contains_ipv4(std::string_view s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            continue;
        std::size_t j = i;
        int runs = 0;
        while (j < s.size()) {
            std::size_t start = j;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            if (j == start)
                break;
            ++runs;
            if (runs == 4)
                return true;
            if (j < s.size() && s[j] == '.')
                ++j;
            else
                break;
        }
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
    }
    return false;
}

bool contains_tld(std::string_view s, const KnowledgeBase& kb) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] != '.')
            continue;
        std::size_t j = i + 1;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '-'))
            ++j;
        if (j == i + 1)
            continue;
        if (j < s.size() && s[j] != '/' && s[j] != ':')
            continue;
        std::string candidate = to_lower(s.substr(i + 1, j - i - 1));
        if (kb.tld_set.count(candidate))
            return true;
    }
    return false;
}

bool only_dots_and_slashes(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](char c) { return c == '.' || c == '/'; });
}

bool ref_word(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
    });
}

// origin/master-style remote refs: one slash, plain words on both sides,
// and either a well-known remote name or a git command context.
bool is_remote_ref(std::string_view s, std::string_view command_name) {
    std::size_t slash = s.find('/');
    if (slash == std::string_view::npos || s.find('/', slash + 1) != std::string_view::npos)
        return false;
    std::string_view left = s.substr(0, slash);
    std::string_view right = s.substr(slash + 1);
    if (!ref_word(left) || !ref_word(right))
        return false;
    return left == "origin" || left == "upstream" || command_name == "git";
}

// Redirection prefixes (`2>`, `>>`, `<`) peel off before matching the
// literal exclusion list, so `2>/dev/null` is excluded like `/dev/null`.
std::string_view strip_redirect_prefix(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        ++i;
    std::size_t ops = i;
    while (ops < s.size() && (s[ops] == '>' || s[ops] == '<'))
        ++ops;
    if (ops == i)
        return s;
    if (ops < s.size() && s[ops] == '&')
        ++ops;
    return s.substr(ops);
}

std::string_view env_value(std::string_view env_prefix) {
    std::size_t eq = env_prefix.find('=');
    return eq == std::string_view::npos ? std::string_view{} : env_prefix.substr(eq + 1);
}

std::string_view env_name(std::string_view env_prefix) {
    std::size_t eq = env_prefix.find('=');
    return eq == std::string_view::npos ? env_prefix : env_prefix.substr(0, eq);
}

}  // namespace

std::string_view practice_name(PracticeKind kind) {
    return kPracticeNames[static_cast<int>(kind)];
}

std::optional<PracticeKind> practice_from_name(std::string_view name) {
    for (int i = 0; i < kPracticeCount; ++i)
        if (kPracticeNames[i] == name)
            return static_cast<PracticeKind>(i);
    return std::nullopt;
}

bool is_location(std::string_view argument, const KnowledgeBase& kb,
                 std::string_view command_name) {
    if (argument.empty())
        return false;
    bool positive = argument.find('/') != std::string_view::npos ||
                    contains_ipv4(argument) || contains_tld(argument, kb);
    if (!positive)
        return false;
    if (kb.location_exclusions.count(std::string(strip_redirect_prefix(argument))))
        return false;
    if (only_dots_and_slashes(argument))
        return false;
    if (is_remote_ref(argument, command_name))
        return false;
    return true;
}

double compression_ratio(const AliasDefinition& alias) {
    if (alias.name.empty())
        return 0.0;
    return static_cast<double>(alias.value.size()) / static_cast<double>(alias.name.size());
}

std::optional<PracticeLabel> is_nickname(const AliasDefinition& alias, const KnowledgeBase& kb) {
    if (alias.commands.size() != 1)
        return std::nullopt;
    const ParsedCommand& cmd = alias.commands[0];
    if (!cmd.arguments.empty() || !cmd.env_prefixes.empty() || cmd.sudo || cmd.name.empty())
        return std::nullopt;
    if (kb.known_commands.count(alias.name))
        return std::nullopt;
    PracticeLabel label{PracticeKind::Nicknaming, cmd.name, false};
    // Misspelling repair needs a name long enough to be a mistyped command;
    // one-letter names are plain abbreviations (g -> git).
    if (alias.name != cmd.name && alias.name.size() >= 2 &&
        damerau_levenshtein(alias.name, cmd.name) <= 2)
        label.typo_fix = true;
    return label;
}

std::optional<PracticeLabel> is_subcommand_abbrev(const AliasDefinition& alias,
                                                  const KnowledgeBase& kb) {
    if (alias.commands.size() != 1)
        return std::nullopt;
    const ParsedCommand& cmd = alias.commands[0];
    if (!cmd.env_prefixes.empty() || cmd.arguments.size() != 1)
        return std::nullopt;
    if (!kb.subcommand_commands.count(cmd.name))
        return std::nullopt;
    if (!looks_like_subcommand(cmd.arguments[0]))
        return std::nullopt;
    return PracticeLabel{PracticeKind::AbbreviatingSubcommands,
                         cmd.name + " " + cmd.arguments[0], false};
}

std::optional<PracticeLabel> is_bookmark(const AliasDefinition& alias, const KnowledgeBase& kb) {
    for (const ParsedCommand& cmd : alias.commands) {
        for (const std::string& arg : cmd.arguments)
            if (is_location(arg, kb, cmd.name))
                return PracticeLabel{PracticeKind::BookmarkingLocations, "arg:" + arg, false};
        for (const std::string& env : cmd.env_prefixes)
            if (is_location(env_value(env), kb, cmd.name))
                return PracticeLabel{PracticeKind::BookmarkingLocations, "env:" + env, false};
    }
    return std::nullopt;
}

std::optional<PracticeLabel> is_substitution(const AliasDefinition& alias,
                                             const KnowledgeBase& kb) {
    if (alias.commands.empty())
        return std::nullopt;
    if (!kb.known_commands.count(alias.name))
        return std::nullopt;
    for (const ParsedCommand& cmd : alias.commands)
        if (cmd.name == alias.name)
            return std::nullopt;
    return PracticeLabel{PracticeKind::SubstitutingCommands, alias.commands[0].name, false};
}

std::optional<PracticeLabel> is_override(const AliasDefinition& alias) {
    bool redefines = false;
    for (const ParsedCommand& cmd : alias.commands)
        if (cmd.name == alias.name)
            redefines = true;
    if (!redefines)
        return std::nullopt;
    bool bare = alias.commands.size() == 1 && alias.commands[0].arguments.empty() &&
                alias.commands[0].env_prefixes.empty() && !alias.commands[0].sudo;
    if (bare)
        return std::nullopt;
    return PracticeLabel{PracticeKind::OverridingDefaults, alias.name, false};
}

std::optional<PracticeLabel> is_colorizing(const AliasDefinition& alias,
                                           const KnowledgeBase& kb) {
    auto label = [](std::string evidence) {
        return PracticeLabel{PracticeKind::ColorizingOutput, std::move(evidence), false};
    };
    for (std::size_t i = 0; i < alias.commands.size(); ++i) {
        const ParsedCommand& cmd = alias.commands[i];
        for (const std::string& arg : cmd.arguments)
            if (kb.has_color_flag(cmd.name, arg))
                return label("flag:" + arg);
        for (const std::string& env : cmd.env_prefixes)
            if (kb.color_env_vars.count(std::string(env_name(env))))
                return label("env:" + std::string(env_name(env)));
        if (i > 0 && (alias.commands[i - 1].separator_after == Separator::Pipe ||
                      alias.commands[i - 1].separator_after == Separator::PipeErr) &&
            kb.colorizer_tools.count(cmd.name))
            return label("pipe:" + cmd.name);
    }
    auto twins = kb.color_twins.find(alias.name);
    if (twins != kb.color_twins.end())
        for (const ParsedCommand& cmd : alias.commands)
            if (twins->second.count(cmd.name))
                return label("twin:" + cmd.name);
    return std::nullopt;
}

std::optional<PracticeLabel> is_privilege_elevation(const AliasDefinition& alias) {
    for (const ParsedCommand& cmd : alias.commands)
        if (cmd.sudo)
            return PracticeLabel{PracticeKind::ElevatingPrivilege, cmd.name, false};
    return std::nullopt;
}

std::optional<PracticeLabel> is_transform_pipeline(const AliasDefinition& alias) {
    if (alias.commands.size() < 2)
        return std::nullopt;
    for (std::size_t i = 0; i + 1 < alias.commands.size(); ++i) {
        Separator sep = alias.commands[i].separator_after;
        if (sep != Separator::Pipe && sep != Separator::PipeErr)
            return std::nullopt;
    }
    if (alias.commands.back().separator_after != Separator::None)
        return std::nullopt;
    std::string evidence;
    for (std::size_t i = 0; i < alias.commands.size(); ++i) {
        if (i)
            evidence += '|';
        evidence += alias.commands[i].name;
    }
    return PracticeLabel{PracticeKind::TransformingData, evidence, false};
}

std::optional<PracticeLabel> is_subcommand_chain(const AliasDefinition& alias,
                                                 const KnowledgeBase& kb) {
    // Two invocations of the same subcommand-taking command, each with a
    // non-dash first argument, joined by && or ; (possibly with other
    // commands in between).
    for (const auto& candidate : kb.subcommand_commands) {
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i < alias.commands.size(); ++i) {
            const ParsedCommand& cmd = alias.commands[i];
            if (cmd.name == candidate && !cmd.arguments.empty() &&
                !cmd.arguments[0].empty() && cmd.arguments[0][0] != '-')
                hits.push_back(i);
        }
        for (std::size_t h = 0; h + 1 < hits.size(); ++h) {
            bool chained = true;
            for (std::size_t i = hits[h]; i < hits[h + 1]; ++i) {
                Separator sep = alias.commands[i].separator_after;
                if (sep != Separator::And && sep != Separator::Seq) {
                    chained = false;
                    break;
                }
            }
            if (chained)
                return PracticeLabel{PracticeKind::ChainingSubcommands, candidate, false};
        }
    }
    return std::nullopt;
}

std::vector<PracticeLabel> classify(const AliasDefinition& alias, const KnowledgeBase& kb) {
    std::vector<PracticeLabel> labels;
    auto add = [&](std::optional<PracticeLabel> label) {
        if (label)
            labels.push_back(std::move(*label));
    };
    add(is_nickname(alias, kb));
    add(is_subcommand_abbrev(alias, kb));
    add(is_bookmark(alias, kb));
    add(is_substitution(alias, kb));
    add(is_override(alias));
    add(is_colorizing(alias, kb));
    add(is_privilege_elevation(alias));
    add(is_transform_pipeline(alias));
    add(is_subcommand_chain(alias, kb));
    return labels;
}

}  // namespace aliasmine
