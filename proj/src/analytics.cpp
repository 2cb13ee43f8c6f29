#include "aliasmine/analytics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "aliasmine/text.hpp"

namespace aliasmine {

namespace {

using Counts = std::map<std::string, std::uint64_t>;

std::vector<std::pair<std::string, std::uint64_t>> ranked(const Counts& counts,
                                                          std::size_t k) {
    std::vector<std::pair<std::string, std::uint64_t>> entries(counts.begin(), counts.end());
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    if (entries.size() > k)
        entries.resize(k);
    return entries;
}

Table ranked_table(const char* token_column, const Counts& counts, std::uint64_t total,
                   std::size_t k) {
    Table t;
    t.columns = {token_column, "count", "percent"};
    for (const auto& [token, count] : ranked(counts, k)) {
        double pct = total ? 100.0 * static_cast<double>(count) / static_cast<double>(total) : 0.0;
        t.rows.push_back({token, std::to_string(count), format_percent(pct)});
    }
    return t;
}

std::string join_spaces(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += ' ';
        out += parts[i];
    }
    return out;
}

// Arguments of each command, grouped by command row id.
std::vector<std::vector<std::string>> arguments_by_command(const CorpusStore& store) {
    std::vector<std::vector<std::string>> args(store.commands.size());
    for (const auto& a : store.arguments)
        args[a.command_id].push_back(a.text);
    return args;
}

std::vector<std::vector<std::size_t>> commands_by_alias(const CorpusStore& store) {
    std::vector<std::vector<std::size_t>> by_alias(store.aliases.size());
    for (std::size_t i = 0; i < store.commands.size(); ++i)
        by_alias[store.commands[i].alias_id].push_back(i);
    return by_alias;
}

bool is_pure_pipeline(const CorpusStore& store, const std::vector<std::size_t>& command_ids) {
    if (command_ids.size() < 2)
        return false;
    for (std::size_t i = 0; i + 1 < command_ids.size(); ++i) {
        Separator sep = store.commands[command_ids[i]].separator_after;
        if (sep != Separator::Pipe && sep != Separator::PipeErr)
            return false;
    }
    return store.commands[command_ids.back()].separator_after == Separator::None;
}

}  // namespace

Table top_names(const CorpusStore& store, std::size_t k) {
    Counts counts;
    for (const auto& a : store.aliases)
        ++counts[a.name];
    return ranked_table("name", counts, store.aliases.size(), k);
}

Table top_commands(const CorpusStore& store, std::size_t k) {
    Counts counts;
    for (const auto& c : store.commands)
        if (!c.name.empty())
            ++counts[c.name];
    return ranked_table("command", counts, store.commands.size(), k);
}

Table top_arguments(const CorpusStore& store, std::size_t k) {
    Counts counts;
    for (const auto& a : store.arguments)
        ++counts[a.text];
    return ranked_table("argument", counts, store.arguments.size(), k);
}

Table command_breakdown(const CorpusStore& store, const std::string& command,
                        std::size_t k_args, std::size_t k_aliases) {
    auto args = arguments_by_command(store);

    // argument sequence -> (total, alias name -> count)
    std::map<std::string, std::pair<std::uint64_t, Counts>> groups;
    std::uint64_t command_total = 0;
    for (std::size_t i = 0; i < store.commands.size(); ++i) {
        const CommandRow& c = store.commands[i];
        if (c.name != command)
            continue;
        ++command_total;
        auto& group = groups[join_spaces(args[i])];
        ++group.first;
        ++group.second[store.aliases[c.alias_id].name];
    }

    std::vector<std::pair<std::string, std::pair<std::uint64_t, Counts>>> ordered(
        groups.begin(), groups.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second.first != b.second.first)
            return a.second.first > b.second.first;
        return a.first < b.first;
    });
    if (ordered.size() > k_args)
        ordered.resize(k_args);

    Table t;
    t.columns = {"arguments", "count", "percent", "top_aliases"};
    for (const auto& [arg_combo, group] : ordered) {
        double pct = command_total
                         ? 100.0 * static_cast<double>(group.first) / static_cast<double>(command_total)
                         : 0.0;
        std::string alias_summary;
        for (const auto& [alias, count] : ranked(group.second, k_aliases)) {
            if (!alias_summary.empty())
                alias_summary += ' ';
            alias_summary += alias + ':' +
                             format_percent(100.0 * static_cast<double>(count) /
                                            static_cast<double>(group.first));
        }
        t.rows.push_back(
            {arg_combo, std::to_string(group.first), format_percent(pct), alias_summary});
    }
    return t;
}

Table compression_histogram(const CorpusStore& store, std::size_t log_bins) {
    Table t;
    t.columns = {"bin_lo", "bin_hi", "count", "marks_ratio_one"};
    if (log_bins == 0)
        log_bins = 1;

    std::vector<double> ratios;
    ratios.reserve(store.aliases.size());
    for (const auto& a : store.aliases)
        ratios.push_back(a.name.empty() ? 0.0
                                        : static_cast<double>(a.value.size()) /
                                              static_cast<double>(a.name.size()));

    double lo = 0.01, hi = 100.0;  // defaults used for an empty store
    if (!ratios.empty()) {
        double min_pos = std::numeric_limits<double>::max();
        double max_ratio = 0.0;
        for (double r : ratios) {
            if (r > 0)
                min_pos = std::min(min_pos, r);
            max_ratio = std::max(max_ratio, r);
        }
        if (max_ratio > 0) {
            lo = std::max(1e-3, std::min(min_pos, max_ratio));
            hi = std::max(max_ratio, lo * 1.0000001);
        }
    }

    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    std::vector<std::uint64_t> counts(log_bins, 0);
    auto edge = [&](std::size_t i) {
        return std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) /
                                     static_cast<double>(log_bins));
    };
    for (double r : ratios) {
        std::size_t bin;
        if (r <= lo)
            bin = 0;
        else if (r >= hi)
            bin = log_bins - 1;
        else
            bin = std::min<std::size_t>(
                log_bins - 1,
                static_cast<std::size_t>((std::log(r) - log_lo) / (log_hi - log_lo) *
                                         static_cast<double>(log_bins)));
        ++counts[bin];
    }

    for (std::size_t i = 0; i < log_bins; ++i) {
        double bin_lo = edge(i);
        double bin_hi = edge(i + 1);
        bool marks_one = bin_lo <= 1.0 && 1.0 < bin_hi;
        t.rows.push_back({format_double(bin_lo), format_double(bin_hi),
                          std::to_string(counts[i]), marks_one ? "true" : "false"});
    }
    return t;
}

Table pipeline_flows(const CorpusStore& store, std::size_t n, double min_share) {
    auto by_alias = commands_by_alias(store);

    // (position, from, to) -> weight; usage[position][command] over length-n pipelines
    std::map<std::pair<std::size_t, std::pair<std::string, std::string>>, std::uint64_t> edges;
    std::vector<Counts> usage(n);
    for (const auto& ids : by_alias) {
        if (ids.size() != n || !is_pure_pipeline(store, ids))
            continue;
        for (std::size_t p = 0; p < n; ++p)
            ++usage[p][store.commands[ids[p]].name];
        for (std::size_t p = 0; p + 1 < n; ++p)
            ++edges[{p, {store.commands[ids[p]].name, store.commands[ids[p + 1]].name}}];
    }

    Table t;
    t.columns = {"position", "from", "to", "weight"};
    std::vector<std::tuple<std::size_t, std::string, std::string, std::uint64_t>> rows;
    for (const auto& [key, weight] : edges) {
        const auto& [pos, pair] = key;
        double source_usage = static_cast<double>(usage[pos].at(pair.first));
        if (static_cast<double>(weight) < min_share * source_usage)
            continue;
        rows.emplace_back(pos, pair.first, pair.second, weight);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b))
            return std::get<0>(a) < std::get<0>(b);
        if (std::get<3>(a) != std::get<3>(b))
            return std::get<3>(a) > std::get<3>(b);
        if (std::get<1>(a) != std::get<1>(b))
            return std::get<1>(a) < std::get<1>(b);
        return std::get<2>(a) < std::get<2>(b);
    });
    for (const auto& [pos, from, to, weight] : rows)
        t.rows.push_back({std::to_string(pos), from, to, std::to_string(weight)});
    return t;
}

Table provenance_files(const CorpusStore& store) {
    static constexpr std::string_view kPatterns[] = {"*alias*", "*bashrc*", "*zshrc*",
                                                     "*profile*", "git*"};
    std::vector<std::uint64_t> aliases_per_file(store.files.size(), 0);
    for (const auto& a : store.aliases)
        ++aliases_per_file[a.file_id];

    std::uint64_t total_files = 0, total_aliases = store.aliases.size();
    std::uint64_t bucket_files[std::size(kPatterns)] = {};
    std::uint64_t bucket_aliases[std::size(kPatterns)] = {};
    for (const auto& f : store.files) {
        if (aliases_per_file[f.file_id] == 0)
            continue;
        ++total_files;
        for (std::size_t p = 0; p < std::size(kPatterns); ++p) {
            if (glob_match(kPatterns[p], f.name)) {
                ++bucket_files[p];
                bucket_aliases[p] += aliases_per_file[f.file_id];
                break;  // first pattern wins
            }
        }
    }

    Table t;
    t.columns = {"pattern", "files", "files_percent", "aliases", "aliases_percent"};
    for (std::size_t p = 0; p < std::size(kPatterns); ++p) {
        double fp = total_files ? 100.0 * static_cast<double>(bucket_files[p]) /
                                      static_cast<double>(total_files)
                                : 0.0;
        double ap = total_aliases ? 100.0 * static_cast<double>(bucket_aliases[p]) /
                                        static_cast<double>(total_aliases)
                                  : 0.0;
        t.rows.push_back({std::string(kPatterns[p]), std::to_string(bucket_files[p]),
                          format_percent(fp), std::to_string(bucket_aliases[p]),
                          format_percent(ap)});
    }
    return t;
}

Table provenance_words(const CorpusStore& store, const KnowledgeBase& kb, std::size_t k) {
    std::vector<std::uint64_t> aliases_per_repo(store.repos.size(), 0);
    std::vector<std::int64_t> repo_of_file(store.files.size(), kNoRepo);
    for (const auto& f : store.files)
        repo_of_file[f.file_id] = f.repo_id;
    for (const auto& a : store.aliases) {
        std::int64_t repo = repo_of_file[a.file_id];
        if (repo != kNoRepo)
            ++aliases_per_repo[repo];
    }

    Counts repo_counts;
    Counts alias_counts;
    for (const auto& r : store.repos) {
        std::set<std::string> words;
        std::string word;
        for (char c : to_lower(r.description)) {
            if (std::isalnum(static_cast<unsigned char>(c))) {
                word += c;
            } else if (!word.empty()) {
                words.insert(word);
                word.clear();
            }
        }
        if (!word.empty())
            words.insert(word);
        for (const auto& w : words) {
            if (kb.stop_words.count(w))
                continue;
            ++repo_counts[w];
            alias_counts[w] += aliases_per_repo[r.repo_id];
        }
    }

    Table t;
    t.columns = {"word", "repos", "repos_percent", "aliases", "aliases_percent"};
    std::uint64_t total_repos = store.repos.size();
    std::uint64_t total_aliases = store.aliases.size();
    for (const auto& [word, count] : ranked(repo_counts, k)) {
        double rp = total_repos ? 100.0 * static_cast<double>(count) /
                                      static_cast<double>(total_repos)
                                : 0.0;
        double ap = total_aliases ? 100.0 * static_cast<double>(alias_counts[word]) /
                                        static_cast<double>(total_aliases)
                                  : 0.0;
        t.rows.push_back({word, std::to_string(count), format_percent(rp),
                          std::to_string(alias_counts[word]), format_percent(ap)});
    }
    return t;
}

Table practice_matrix(const CorpusStore& store, std::size_t k) {
    Table header_only;
    header_only.columns = {"command", "count"};
    for (int kind = 0; kind < kPracticeCount; ++kind)
        header_only.columns.push_back(
            std::string(practice_name(static_cast<PracticeKind>(kind))));
    if (store.labels.empty())
        return header_only;

    auto by_alias = commands_by_alias(store);

    // Aliases a command is involved in: it appears in the value or is the
    // alias name itself (a redefinition).
    std::map<std::string, std::vector<std::int64_t>> involved;
    for (std::size_t alias_id = 0; alias_id < store.aliases.size(); ++alias_id) {
        std::set<std::string> names;
        names.insert(store.aliases[alias_id].name);
        for (std::size_t cmd : by_alias[alias_id])
            if (!store.commands[cmd].name.empty())
                names.insert(store.commands[cmd].name);
        for (const auto& name : names)
            involved[name].push_back(static_cast<std::int64_t>(alias_id));
    }

    std::vector<std::set<PracticeKind>> labels_of(store.aliases.size());
    for (const auto& l : store.labels)
        labels_of[l.alias_id].insert(l.kind);

    // Only commands that actually occur in values make rows; alias-name-only
    // tokens (ll, gs, ...) are keyed under their commands already.
    std::set<std::string> value_commands;
    for (const auto& c : store.commands)
        if (!c.name.empty())
            value_commands.insert(c.name);

    std::vector<std::pair<std::string, std::uint64_t>> order;
    for (const auto& [name, ids] : involved)
        if (value_commands.count(name))
            order.emplace_back(name, ids.size());
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });
    if (order.size() > k)
        order.resize(k);

    Table t;
    t.columns = {"command", "count"};
    for (int kind = 0; kind < kPracticeCount; ++kind)
        t.columns.push_back(std::string(practice_name(static_cast<PracticeKind>(kind))));
    for (const auto& [name, count] : order) {
        std::vector<std::string> row = {name, std::to_string(count)};
        for (int kind = 0; kind < kPracticeCount; ++kind) {
            std::uint64_t with_label = 0;
            for (std::int64_t alias_id : involved[name])
                if (labels_of[alias_id].count(static_cast<PracticeKind>(kind)))
                    ++with_label;
            double pct = 100.0 * static_cast<double>(with_label) / static_cast<double>(count);
            row.push_back(pct > 1.0 ? format_percent(pct) : "");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table representative_sample(const CorpusStore& store, const SampleOptions& options) {
    auto args = arguments_by_command(store);

    // command -> arg combo -> alias name -> count
    std::map<std::string, std::map<std::string, Counts>> tree;
    Counts command_counts;
    for (std::size_t i = 0; i < store.commands.size(); ++i) {
        const CommandRow& c = store.commands[i];
        if (c.name.empty())
            continue;
        ++command_counts[c.name];
        ++tree[c.name][join_spaces(args[i])][store.aliases[c.alias_id].name];
    }

    // (name, value) definition counts for representative rows and long tail.
    std::map<std::pair<std::string, std::string>, std::uint64_t> definition_counts;
    for (const auto& a : store.aliases)
        ++definition_counts[{a.name, a.value}];

    Table t;
    t.columns = {"source", "name", "value", "count", "seed"};
    std::set<std::pair<std::string, std::string>> emitted;
    const std::string seed_str = std::to_string(options.seed);

    // Most common full definition for an alias name, ties by value.
    auto representative_value = [&](const std::string& name) {
        std::pair<std::uint64_t, std::string> best{0, ""};
        for (const auto& [def, count] : definition_counts) {
            if (def.first != name)
                continue;
            if (count > best.first || (count == best.first && def.second < best.second &&
                                       best.first != 0))
                best = {count, def.second};
        }
        return best;
    };

    for (const auto& [cmd, cmd_count] : ranked(command_counts, options.n_cmds)) {
        std::map<std::string, std::uint64_t> combo_counts;
        for (const auto& [combo, aliases] : tree[cmd])
            for (const auto& [name, cnt] : aliases)
                combo_counts[combo] += cnt;
        (void)cmd_count;
        for (const auto& [combo, combo_count] : ranked(combo_counts, options.n_args)) {
            (void)combo_count;
            for (const auto& [name, cnt] : ranked(tree[cmd][combo], options.n_aliases)) {
                (void)cnt;
                auto [def_count, value] = representative_value(name);
                if (def_count == 0 || !emitted.insert({name, value}).second)
                    continue;
                t.rows.push_back(
                    {"top", name, value, std::to_string(def_count), seed_str});
            }
        }
    }

    // Long tail: definitions that occur exactly once, seeded uniform picks.
    std::vector<const std::pair<const std::pair<std::string, std::string>, std::uint64_t>*>
        singles;
    for (const auto& entry : definition_counts)
        if (entry.second == 1 && !emitted.count(entry.first))
            singles.push_back(&entry);

    std::mt19937_64 rng(options.seed);
    std::size_t want = std::min(options.long_tail, singles.size());
    std::vector<std::size_t> order(singles.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    for (std::size_t i = 0; i < want; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (order.size() - i));
        std::swap(order[i], order[j]);
    }
    std::vector<std::size_t> picked(order.begin(), order.begin() + static_cast<long>(want));
    std::sort(picked.begin(), picked.end());
    for (std::size_t idx : picked) {
        const auto& [def, count] = *singles[idx];
        t.rows.push_back({"long_tail", def.first, def.second, std::to_string(count), seed_str});
    }
    return t;
}

}  // namespace aliasmine
