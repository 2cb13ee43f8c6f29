#pragma once

#include <cstdint>
#include <string>

#include "aliasmine/corpus.hpp"
#include "aliasmine/knowledge_base.hpp"
#include "aliasmine/table.hpp"

namespace aliasmine {

// Aggregate views over a store snapshot. Every function is pure: the same
// store and options produce byte-identical tables. Ranking ties break
// lexicographically.

Table top_names(const CorpusStore& store, std::size_t k);
Table top_commands(const CorpusStore& store, std::size_t k);
Table top_arguments(const CorpusStore& store, std::size_t k);

// Occurrences of one command grouped by exact argument sequence, each group
// listing the alias names used for it with their share of the group.
Table command_breakdown(const CorpusStore& store, const std::string& command,
                        std::size_t k_args, std::size_t k_aliases);

// Log-spaced histogram of value-length / name-length ratios. The
// marks_ratio_one column flags the bin containing ratio 1.
Table compression_histogram(const CorpusStore& store, std::size_t log_bins = 40);

// Command-to-command edges at each position of pure-pipe aliases with
// exactly `n` commands, dropping edges below min_share of the source
// command's usage at that position.
Table pipeline_flows(const CorpusStore& store, std::size_t n = 3, double min_share = 0.10);

// File-name pattern buckets (first match wins, files with at least one
// alias counted) and description words across repositories.
Table provenance_files(const CorpusStore& store);
Table provenance_words(const CorpusStore& store, const KnowledgeBase& kb, std::size_t k = 10);

// Per-command share of alias occurrences carrying each practice label;
// cells under 1% suppressed.
Table practice_matrix(const CorpusStore& store, std::size_t k = 25);

struct SampleOptions {
    std::size_t n_cmds = 50;
    std::size_t n_args = 10;
    std::size_t n_aliases = 3;
    std::size_t long_tail = 200;
    std::uint64_t seed = 0;
};

// The top alias names per argument combination per command, plus a seeded
// uniform draw from the long tail of aliases occurring exactly once.
Table representative_sample(const CorpusStore& store, const SampleOptions& options = {});

}  // namespace aliasmine
