#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aliasmine {

// Curated command knowledge backing the practice classifiers. Every set is
// loaded from a plain-text data file (one entry per line, `#` comments; map
// files use `key<TAB>value` lines). Bundled defaults ship inside the binary
// in the same format; a kb directory overrides them file by file.
struct KnowledgeBase {
    std::set<std::string> known_commands;
    std::set<std::string> subcommand_commands;  // subset of known_commands
    std::map<std::string, std::set<std::string>> color_flags;  // "*" key = any command
    std::set<std::string> colorizer_tools;
    std::map<std::string, std::set<std::string>> color_twins;  // command -> colorized variants
    std::set<std::string> color_env_vars;
    std::set<std::string> tld_set;  // lowercase
    std::set<std::string> location_exclusions;
    std::set<std::string> stop_words;

    // True when the command carries a colorizing flag token.
    bool has_color_flag(std::string_view command, std::string_view argument) const;
};

// File names looked up inside a kb directory.
inline constexpr std::string_view kKbFileNames[] = {
    "known_commands.txt",   "subcommand_commands.txt", "color_flags.tsv",
    "colorizer_tools.txt",  "color_twins.tsv",         "color_env_vars.txt",
    "tlds.txt",             "location_exclusions.txt", "stopwords.txt",
};

// Bundled defaults only.
KnowledgeBase default_knowledge_base();

// Bundled defaults with per-file overrides from `dir`. Missing files keep
// their defaults; unreadable dir throws std::runtime_error.
KnowledgeBase load_knowledge_base(const std::string& dir);

}  // namespace aliasmine
