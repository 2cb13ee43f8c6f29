#include "aliasmine/suggest.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "aliasmine/edit_distance.hpp"

namespace aliasmine {

using ordered_json = nlohmann::ordered_json;

std::string_view rule_kind_name(RuleKind kind) {
    switch (kind) {
        case RuleKind::SudoPrefix: return "sudo-prefix";
        case RuleKind::ArgOrder: return "arg-order";
        case RuleKind::Chain: return "chain";
        case RuleKind::Typo: return "typo";
    }
    return "";
}

RuleSet build_rules(const CorpusStore& store, const BuildOptions& options) {
    RuleSet rules;

    std::vector<std::vector<std::size_t>> by_alias(store.aliases.size());
    for (std::size_t i = 0; i < store.commands.size(); ++i)
        by_alias[store.commands[i].alias_id].push_back(i);
    std::vector<std::vector<std::string>> args(store.commands.size());
    for (const auto& a : store.arguments)
        args[a.command_id].push_back(a.text);

    // Sudo usage per (command, first argument).
    std::map<std::pair<std::string, std::string>, SudoRule> sudo_counts;
    for (std::size_t i = 0; i < store.commands.size(); ++i) {
        const CommandRow& c = store.commands[i];
        if (c.name.empty() || args[i].empty())
            continue;
        auto& rule = sudo_counts[{c.name, args[i][0]}];
        ++rule.total;
        if (c.sudo)
            ++rule.with_sudo;
    }
    for (const auto& [key, rule] : sudo_counts)
        if (rule.total >= options.min_count && rule.support() >= options.min_support)
            rules.sudo_rules[key] = rule;

    // Position-zero argument vocabulary per command.
    std::map<std::string, std::map<std::string, std::uint64_t>> order_counts;
    for (std::size_t i = 0; i < store.commands.size(); ++i) {
        const CommandRow& c = store.commands[i];
        if (c.name.empty() || args[i].empty() || args[i][0].empty() || args[i][0][0] == '-')
            continue;
        ++order_counts[c.name][args[i][0]];
    }
    for (const auto& [command, vocab] : order_counts)
        for (const auto& [token, count] : vocab)
            if (count >= options.min_count)
                rules.order_rules[command][token] = count;

    // Chain precedents from ChainingSubcommands aliases, keyed by the final
    // (command, subcommand) of the chain.
    std::map<std::pair<std::string, std::string>, std::map<std::string, std::uint64_t>>
        chain_counts;
    for (const auto& label : store.labels) {
        if (label.kind != PracticeKind::ChainingSubcommands)
            continue;
        const auto& ids = by_alias[label.alias_id];
        if (ids.empty())
            continue;
        std::size_t last = ids.back();
        const CommandRow& c = store.commands[last];
        if (c.name.empty() || args[last].empty())
            continue;

        std::vector<ParsedCommand> cmds;
        for (std::size_t id : ids) {
            ParsedCommand pc;
            pc.env_prefixes = store.commands[id].env_prefixes;
            pc.name = store.commands[id].name;
            pc.arguments = args[id];
            pc.sudo = store.commands[id].sudo;
            pc.separator_after = store.commands[id].separator_after;
            cmds.push_back(std::move(pc));
        }
        ++chain_counts[{c.name, args[last][0]}][reassemble(cmds)];
    }
    for (const auto& [key, chains] : chain_counts) {
        auto& list = rules.chain_rules[key];
        for (const auto& [chain, count] : chains)
            list.push_back({chain, count});
        std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
            if (a.count != b.count)
                return a.count > b.count;
            return a.chain < b.chain;
        });
    }

    for (const auto& c : store.commands)
        if (!c.name.empty())
            rules.typo_index.insert(c.name);
    for (const auto& a : store.aliases)
        rules.typo_index.insert(a.name);
    return rules;
}

namespace {

struct ParsedLine {
    std::vector<ParsedCommand> commands;
};

ParsedLine parse_command_line(const std::string& command_line) {
    auto commands = tokenize_value(command_line);
    if (!commands)
        throw std::invalid_argument("cannot parse command line: " +
                                    std::string(parse_failure_name(ParseFailure::UnbalancedQuote)));
    if (commands->empty() || (*commands)[0].name.empty())
        throw std::invalid_argument("cannot parse command line: no command word");
    return {std::move(*commands)};
}

// Rebuilds the full line with the first command replaced.
std::string with_first_command(const ParsedLine& line, const ParsedCommand& replacement) {
    std::vector<ParsedCommand> cmds = line.commands;
    Separator keep = cmds[0].separator_after;
    cmds[0] = replacement;
    cmds[0].separator_after = keep;
    return reassemble(cmds);
}

}  // namespace

std::vector<Suggestion> suggest(const std::string& command_line, const RuleSet& rules,
                                std::size_t k) {
    ParsedLine line = parse_command_line(command_line);
    const ParsedCommand& first = line.commands[0];
    const std::string input = reassemble(line.commands);

    std::vector<Suggestion> found;
    auto propose = [&](std::string replacement, RuleKind kind, double score,
                       std::uint64_t evidence) {
        if (replacement == input)
            return;
        found.push_back({std::move(replacement), kind, score, evidence});
    };

    // sudo-prefix: the corpus runs this invocation as root almost always.
    if (!first.sudo && !first.arguments.empty()) {
        auto it = rules.sudo_rules.find({first.name, first.arguments[0]});
        if (it != rules.sudo_rules.end()) {
            ParsedCommand fixed = first;
            fixed.sudo = true;
            propose(with_first_command(line, fixed), RuleKind::SudoPrefix,
                    it->second.support(), it->second.total);
        }
    }

    // arg-order: a later argument is a known first-position token and beats
    // whatever currently sits up front.
    if (first.arguments.size() >= 2) {
        auto vocab = rules.order_rules.find(first.name);
        if (vocab != rules.order_rules.end()) {
            std::uint64_t first_count = 0;
            if (auto cur = vocab->second.find(first.arguments[0]); cur != vocab->second.end())
                first_count = cur->second;
            std::uint64_t vocab_total = 0;
            for (const auto& [token, count] : vocab->second)
                vocab_total += count;

            std::size_t best_pos = 0;
            std::uint64_t best_count = first_count;
            for (std::size_t p = 1; p < first.arguments.size(); ++p) {
                auto it = vocab->second.find(first.arguments[p]);
                if (it != vocab->second.end() && it->second > best_count) {
                    best_count = it->second;
                    best_pos = p;
                }
            }
            if (best_pos != 0) {
                ParsedCommand fixed = first;
                std::string token = fixed.arguments[best_pos];
                fixed.arguments.erase(fixed.arguments.begin() +
                                      static_cast<std::ptrdiff_t>(best_pos));
                fixed.arguments.insert(fixed.arguments.begin(), token);
                propose(with_first_command(line, fixed), RuleKind::ArgOrder,
                        vocab_total ? static_cast<double>(best_count) /
                                          static_cast<double>(vocab_total)
                                    : 0.0,
                        best_count);
            }
        }
    }

    // chain: the corpus wraps this invocation in a longer precedent chain.
    if (!first.arguments.empty()) {
        auto it = rules.chain_rules.find({first.name, first.arguments[0]});
        if (it != rules.chain_rules.end() && !it->second.empty()) {
            std::uint64_t total = 0;
            for (const auto& precedent : it->second)
                total += precedent.count;
            for (const auto& precedent : it->second)
                propose(precedent.chain, RuleKind::Chain,
                        total ? static_cast<double>(precedent.count) /
                                    static_cast<double>(total)
                              : 0.0,
                        precedent.count);
        }
    }

    // typo: unknown command word near a known one.
    if (!rules.typo_index.count(first.name)) {
        std::size_t best = 3;
        std::string best_token;
        for (const auto& token : rules.typo_index) {
            std::size_t d = damerau_levenshtein(first.name, token);
            if (d < best || (d == best && d <= 2 && token < best_token)) {
                best = d;
                best_token = token;
            }
        }
        if (best <= 2 && !best_token.empty()) {
            ParsedCommand fixed = first;
            fixed.name = best_token;
            propose(with_first_command(line, fixed), RuleKind::Typo,
                    1.0 / (1.0 + static_cast<double>(best)), 1);
        }
    }

    std::stable_sort(found.begin(), found.end(), [](const Suggestion& a, const Suggestion& b) {
        if (a.score != b.score)
            return a.score > b.score;
        if (a.evidence != b.evidence)
            return a.evidence > b.evidence;
        return a.replacement < b.replacement;
    });
    if (found.size() > k)
        found.resize(k);
    return found;
}

std::string rules_to_jsonl(const RuleSet& rules) {
    std::string out;
    auto emit = [&](const ordered_json& j) {
        out += j.dump();
        out += '\n';
    };
    for (const auto& [key, rule] : rules.sudo_rules) {
        ordered_json j;
        j["kind"] = "sudo";
        j["command"] = key.first;
        j["first_arg"] = key.second;
        j["total"] = rule.total;
        j["with_sudo"] = rule.with_sudo;
        emit(j);
    }
    for (const auto& [command, vocab] : rules.order_rules)
        for (const auto& [token, count] : vocab) {
            ordered_json j;
            j["kind"] = "order";
            j["command"] = command;
            j["token"] = token;
            j["count"] = count;
            emit(j);
        }
    for (const auto& [key, chains] : rules.chain_rules)
        for (const auto& precedent : chains) {
            ordered_json j;
            j["kind"] = "chain";
            j["command"] = key.first;
            j["subcommand"] = key.second;
            j["chain"] = precedent.chain;
            j["count"] = precedent.count;
            emit(j);
        }
    for (const auto& token : rules.typo_index) {
        ordered_json j;
        j["kind"] = "known";
        j["token"] = token;
        emit(j);
    }
    return out;
}

RuleSet rules_from_jsonl(std::string_view jsonl) {
    RuleSet rules;
    std::istringstream in{std::string(jsonl)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        ordered_json j = ordered_json::parse(line);
        std::string kind = j.at("kind").get<std::string>();
        if (kind == "sudo") {
            SudoRule rule;
            rule.total = j.at("total").get<std::uint64_t>();
            rule.with_sudo = j.at("with_sudo").get<std::uint64_t>();
            rules.sudo_rules[{j.at("command").get<std::string>(),
                              j.at("first_arg").get<std::string>()}] = rule;
        } else if (kind == "order") {
            rules.order_rules[j.at("command").get<std::string>()]
                             [j.at("token").get<std::string>()] =
                                 j.at("count").get<std::uint64_t>();
        } else if (kind == "chain") {
            rules.chain_rules[{j.at("command").get<std::string>(),
                               j.at("subcommand").get<std::string>()}]
                .push_back({j.at("chain").get<std::string>(),
                            j.at("count").get<std::uint64_t>()});
        } else if (kind == "known") {
            rules.typo_index.insert(j.at("token").get<std::string>());
        } else {
            throw std::runtime_error("unknown rule kind: " + kind);
        }
    }
    for (auto& [key, chains] : rules.chain_rules)
        std::stable_sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) {
            if (a.count != b.count)
                return a.count > b.count;
            return a.chain < b.chain;
        });
    return rules;
}

}  // namespace aliasmine
