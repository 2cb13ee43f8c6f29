#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "aliasmine/classifier.hpp"
#include "aliasmine/hash.hpp"
#include "aliasmine/parser.hpp"
#include "aliasmine/table.hpp"

namespace aliasmine {

inline constexpr std::int64_t kNoRepo = -1;

struct RepoRecord {
    std::int64_t repo_id = 0;
    std::string full_name;  // owner/name
    std::string description;
    std::int64_t stars = 0;
};

struct FileRecord {
    std::int64_t file_id = 0;
    std::string path;  // relative path as scanned
    std::string name;  // base filename
    std::int64_t size = 0;
    std::string content_hash;
    std::int64_t repo_id = kNoRepo;
};

struct AliasRow {
    std::int64_t alias_id = 0;
    std::int64_t file_id = 0;
    int line = 1;
    std::string name;
    std::string value;
    int n_commands = 0;
    bool mid_line = false;
};

struct CommandRow {
    std::int64_t command_id = 0;
    std::int64_t alias_id = 0;
    int position = 0;
    std::string name;
    bool sudo = false;
    std::vector<std::string> env_prefixes;
    Separator separator_after = Separator::None;
};

struct ArgumentRow {
    std::int64_t command_id = 0;
    int position = 0;
    std::string text;
};

struct LabelRow {
    std::int64_t alias_id = 0;
    PracticeKind kind = PracticeKind::Nicknaming;
    std::string evidence;
    bool typo_fix = false;
};

struct IngestReport {
    std::uint64_t files_seen = 0;
    std::uint64_t duplicates_dropped = 0;
    std::uint64_t aliases_parsed = 0;
    std::uint64_t statements_skipped = 0;
    std::uint64_t files_unreadable = 0;

    IngestReport& operator+=(const IngestReport& o);
};

// The five relational tables plus labels, keyed by dense row ids. One
// writer at a time; reads are safe from any number of threads.
struct CorpusStore {
    std::vector<RepoRecord> repos;
    std::vector<FileRecord> files;
    std::vector<AliasRow> aliases;
    std::vector<CommandRow> commands;
    std::vector<ArgumentRow> arguments;
    std::vector<LabelRow> labels;
    SkipTally tally;
    HashAlgorithm hash_algorithm = HashAlgorithm::Sha1;

    std::int64_t add_repo(std::string full_name, std::string description, std::int64_t stars);

    // Parses `contents`, appends file + alias/command/argument rows unless
    // the content hash was seen before. Rows for one file land atomically:
    // either all of them or none.
    IngestReport ingest_file(const std::string& path, std::string_view contents,
                             std::int64_t repo_id = kNoRepo);

    void save(const std::string& path) const;
    static CorpusStore load(const std::string& path);

    // Referential integrity + dense positions; full-table scan.
    bool check_integrity(std::string* problem = nullptr) const;

private:
    std::unordered_set<std::string> seen_hashes_;
    friend IngestReport ingest(CorpusStore&, const std::vector<struct ScannedFile>&);
    friend void import_table(CorpusStore&, std::string_view, const std::string&);
};

// ---------------------------------------------------------------------------
// Scanning
// ---------------------------------------------------------------------------

struct ScannedFile {
    FileRecord record;  // file_id unset until ingest
    std::string contents;
};

struct ScanOptions {
    std::vector<std::string> include_patterns = {"*alias*", "*bashrc*", "*zshrc*",
                                                 "*profile*", "git*"};
    bool all_files = false;  // disable pattern filtering
};

struct ScanResult {
    std::vector<ScannedFile> files;  // lexicographic by path
    std::uint64_t unreadable = 0;
};

ScanResult scan(const std::vector<std::string>& paths, const ScanOptions& options = {});

// Parses in parallel, writes serially, deduplicates by content hash.
IngestReport ingest(CorpusStore& store, const std::vector<ScannedFile>& stream);

// ---------------------------------------------------------------------------
// Export / import
// ---------------------------------------------------------------------------

enum class ExportKind { Repos, Files, Aliases, Commands, Arguments, Labels };

std::optional<ExportKind> export_kind_from_name(std::string_view name);
std::string_view export_kind_name(ExportKind kind);

// Stable column orders (see README). Row count equals table size.
Table export_table(const CorpusStore& store, ExportKind kind);

// JSONL with typed fields (booleans, arrays, null repo refs); the canonical
// interchange form.
std::string export_jsonl(const CorpusStore& store, ExportKind kind);

// Reads a JSONL export produced by export_table back into the store.
// Throws std::runtime_error on malformed input.
void import_table(CorpusStore& store, std::string_view jsonl, const std::string& what);

// Rebuilds parser-shaped definitions from the relational rows, indexed by
// alias id. Used by classification and rule mining.
std::vector<AliasDefinition> materialize_aliases(const CorpusStore& store);

}  // namespace aliasmine
