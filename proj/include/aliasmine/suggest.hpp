#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "aliasmine/corpus.hpp"

namespace aliasmine {

enum class RuleKind { SudoPrefix, ArgOrder, Chain, Typo };

std::string_view rule_kind_name(RuleKind kind);

struct SudoRule {
    std::uint64_t total = 0;
    std::uint64_t with_sudo = 0;
    double support() const {
        return total ? static_cast<double>(with_sudo) / static_cast<double>(total) : 0.0;
    }
};

struct ChainPrecedent {
    std::string chain;  // canonical full command line
    std::uint64_t count = 0;
};

// Command-repair knowledge mined from a labeled store.
struct RuleSet {
    // (command, first argument) -> sudo usage, kept above the support floor
    std::map<std::pair<std::string, std::string>, SudoRule> sudo_rules;
    // command -> token -> how often the token opens the argument list
    std::map<std::string, std::map<std::string, std::uint64_t>> order_rules;
    // (command, subcommand) -> precedent chains ending in that invocation
    std::map<std::pair<std::string, std::string>, std::vector<ChainPrecedent>> chain_rules;
    // every command and alias name seen in the corpus
    std::set<std::string> typo_index;

    bool empty() const {
        return sudo_rules.empty() && order_rules.empty() && chain_rules.empty() &&
               typo_index.empty();
    }
};

struct Suggestion {
    std::string replacement;
    RuleKind rule_kind = RuleKind::Typo;
    double score = 0.0;            // in (0, 1]
    std::uint64_t evidence = 0;    // supporting corpus count

    bool operator==(const Suggestion&) const = default;
};

struct BuildOptions {
    double min_support = 0.8;
    std::uint64_t min_count = 5;
};

// Requires a classified store (chain rules come from ChainingSubcommands
// labels). Empty store yields an empty RuleSet.
RuleSet build_rules(const CorpusStore& store, const BuildOptions& options = {});

// Applies every rule kind to the command line and returns the top-k
// suggestions by score, then evidence, then replacement. Throws
// std::invalid_argument naming the parse failure on unparseable input.
std::vector<Suggestion> suggest(const std::string& command_line, const RuleSet& rules,
                                std::size_t k = 3);

std::string rules_to_jsonl(const RuleSet& rules);
RuleSet rules_from_jsonl(std::string_view jsonl);

}  // namespace aliasmine
