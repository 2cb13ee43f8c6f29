#include "aliasmine/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "aliasmine/text.hpp"

namespace aliasmine {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

IngestReport& IngestReport::operator+=(const IngestReport& o) {
    files_seen += o.files_seen;
    duplicates_dropped += o.duplicates_dropped;
    aliases_parsed += o.aliases_parsed;
    statements_skipped += o.statements_skipped;
    files_unreadable += o.files_unreadable;
    return *this;
}

std::int64_t CorpusStore::add_repo(std::string full_name, std::string description,
                                   std::int64_t stars) {
    for (const auto& r : repos)
        if (r.full_name == full_name)
            return r.repo_id;
    RepoRecord r;
    r.repo_id = static_cast<std::int64_t>(repos.size());
    r.full_name = std::move(full_name);
    r.description = std::move(description);
    r.stars = stars;
    repos.push_back(std::move(r));
    return repos.back().repo_id;
}

namespace {

// Appends one parsed file's rows; ids assigned densely in append order.
void append_rows(CorpusStore& store, FileRecord record, const ParseSourceResult& parsed) {
    record.file_id = static_cast<std::int64_t>(store.files.size());
    const std::int64_t file_id = record.file_id;
    store.files.push_back(std::move(record));

    for (const AliasDefinition& def : parsed.aliases) {
        AliasRow alias;
        alias.alias_id = static_cast<std::int64_t>(store.aliases.size());
        alias.file_id = file_id;
        alias.line = def.line;
        alias.name = def.name;
        alias.value = def.value;
        alias.n_commands = static_cast<int>(def.commands.size());
        alias.mid_line = def.mid_line;
        store.aliases.push_back(std::move(alias));
        const std::int64_t alias_id = store.aliases.back().alias_id;

        for (std::size_t c = 0; c < def.commands.size(); ++c) {
            const ParsedCommand& pc = def.commands[c];
            CommandRow cmd;
            cmd.command_id = static_cast<std::int64_t>(store.commands.size());
            cmd.alias_id = alias_id;
            cmd.position = static_cast<int>(c);
            cmd.name = pc.name;
            cmd.sudo = pc.sudo;
            cmd.env_prefixes = pc.env_prefixes;
            cmd.separator_after = pc.separator_after;
            store.commands.push_back(std::move(cmd));
            const std::int64_t command_id = store.commands.back().command_id;

            for (std::size_t a = 0; a < pc.arguments.size(); ++a)
                store.arguments.push_back(
                    {command_id, static_cast<int>(a), pc.arguments[a]});
        }
    }
    store.tally += parsed.tally;
}

}  // namespace

IngestReport CorpusStore::ingest_file(const std::string& path, std::string_view contents,
                                      std::int64_t repo_id) {
    IngestReport report;
    report.files_seen = 1;

    std::string hash = content_hash(contents, hash_algorithm);
    if (!seen_hashes_.insert(hash).second) {
        report.duplicates_dropped = 1;
        return report;
    }

    FileRecord record;
    record.path = path;
    record.name = fs::path(path).filename().string();
    record.size = static_cast<std::int64_t>(contents.size());
    record.content_hash = std::move(hash);
    record.repo_id = repo_id;

    ParseSourceResult parsed = parse_source(contents, path);
    report.aliases_parsed = parsed.aliases.size();
    report.statements_skipped = parsed.tally.total();
    append_rows(*this, std::move(record), parsed);
    return report;
}

// ---------------------------------------------------------------------------
// Scanning
// ---------------------------------------------------------------------------

namespace {

bool matches_patterns(const std::string& file_name, const ScanOptions& options) {
    if (options.all_files)
        return true;
    for (const auto& pattern : options.include_patterns)
        if (glob_match(pattern, file_name))
            return true;
    return false;
}

std::optional<std::string> read_file_contents(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        return std::nullopt;
    return buf.str();
}

}  // namespace

ScanResult scan(const std::vector<std::string>& paths, const ScanOptions& options) {
    ScanResult result;
    std::vector<fs::path> candidates;

    std::error_code ec;
    for (const auto& root : paths) {
        fs::path p(root);
        if (fs::is_regular_file(p, ec)) {
            candidates.push_back(p);
            continue;
        }
        if (!fs::is_directory(p, ec)) {
            ++result.unreadable;
            continue;
        }
        for (fs::recursive_directory_iterator it(p, fs::directory_options::skip_permission_denied, ec), end;
             it != end; it.increment(ec)) {
            if (ec) {
                ++result.unreadable;
                break;
            }
            if (it->is_regular_file(ec))
                candidates.push_back(it->path());
        }
    }

    std::sort(candidates.begin(), candidates.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const fs::path& path : candidates) {
        std::string base = path.filename().string();
        if (!matches_patterns(base, options))
            continue;
        auto contents = read_file_contents(path);
        if (!contents) {
            ++result.unreadable;
            continue;
        }
        ScannedFile file;
        file.record.path = path.generic_string();
        file.record.name = base;
        file.record.size = static_cast<std::int64_t>(contents->size());
        file.contents = std::move(*contents);
        result.files.push_back(std::move(file));
    }
    return result;
}

IngestReport ingest(CorpusStore& store, const std::vector<ScannedFile>& stream) {
    IngestReport report;
    report.files_seen = stream.size();

    // Hash + parse fan out; dedup decisions and row writes stay in stream
    // order so ids are reproducible.
    const std::size_t n = stream.size();
    std::vector<std::string> hashes(n);
    std::vector<ParseSourceResult> parsed(n);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i)
        hashes[i] = content_hash(stream[i].contents, store.hash_algorithm);

    std::vector<char> keep(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (store.seen_hashes_.insert(hashes[i]).second)
            keep[i] = 1;
        else
            ++report.duplicates_dropped;
    }

#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i])
            parsed[i] = parse_source(stream[i].contents, stream[i].record.path);

    for (std::size_t i = 0; i < n; ++i) {
        if (!keep[i])
            continue;
        FileRecord record = stream[i].record;
        record.content_hash = hashes[i];
        report.aliases_parsed += parsed[i].aliases.size();
        report.statements_skipped += parsed[i].tally.total();
        append_rows(store, std::move(record), parsed[i]);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Persistence: one JSON document with the six tables.
// ---------------------------------------------------------------------------

namespace {

ordered_json file_to_json(const FileRecord& f) {
    ordered_json j;
    j["file"] = f.file_id;
    j["path"] = f.path;
    j["name"] = f.name;
    j["size"] = f.size;
    j["content_hash"] = f.content_hash;
    if (f.repo_id == kNoRepo)
        j["repo"] = nullptr;
    else
        j["repo"] = f.repo_id;
    return j;
}

ordered_json repo_to_json(const RepoRecord& r) {
    ordered_json j;
    j["repo"] = r.repo_id;
    j["full_name"] = r.full_name;
    j["description"] = r.description;
    j["stars"] = r.stars;
    return j;
}

ordered_json alias_to_json(const AliasRow& a) {
    ordered_json j;
    j["file"] = a.file_id;
    j["line"] = a.line;
    j["name"] = a.name;
    j["value"] = a.value;
    j["n_commands"] = a.n_commands;
    j["mid_line"] = a.mid_line;
    return j;
}

ordered_json command_to_json(const CommandRow& c) {
    ordered_json j;
    j["alias_ref"] = c.alias_id;
    j["position"] = c.position;
    j["name"] = c.name;
    j["sudo"] = c.sudo;
    j["env_prefixes"] = c.env_prefixes;
    j["separator_after"] = std::string(separator_name(c.separator_after));
    return j;
}

ordered_json argument_to_json(const ArgumentRow& a) {
    ordered_json j;
    j["command_ref"] = a.command_id;
    j["position"] = a.position;
    j["text"] = a.text;
    return j;
}

ordered_json label_to_json(const LabelRow& l) {
    ordered_json j;
    j["alias_ref"] = l.alias_id;
    j["kind"] = std::string(practice_name(l.kind));
    j["evidence"] = l.evidence;
    j["typo_fix"] = l.typo_fix;
    return j;
}

}  // namespace

void CorpusStore::save(const std::string& path) const {
    ordered_json doc;
    doc["format"] = "aliasmine-store";
    doc["version"] = 1;
    doc["hash_algorithm"] = hash_algorithm == HashAlgorithm::Sha1 ? "sha1" : "sha256";
    doc["tally"] = {{"non_posix", tally.non_posix},
                    {"flag_form", tally.flag_form},
                    {"malformed", tally.malformed}};
    auto dump_all = [](auto& arr, const auto& rows, auto&& to_json) {
        arr = ordered_json::array();
        for (const auto& row : rows)
            arr.push_back(to_json(row));
    };
    dump_all(doc["repos"], repos, repo_to_json);
    dump_all(doc["files"], files, file_to_json);
    dump_all(doc["aliases"], aliases, alias_to_json);
    dump_all(doc["commands"], commands, command_to_json);
    dump_all(doc["arguments"], arguments, argument_to_json);
    dump_all(doc["labels"], labels, label_to_json);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write store: " + path);
    out << doc.dump();
    if (!out)
        throw std::runtime_error("failed writing store: " + path);
}

namespace {

FileRecord file_from_json(const ordered_json& j) {
    FileRecord f;
    f.file_id = j.at("file").get<std::int64_t>();
    f.path = j.at("path").get<std::string>();
    f.name = j.at("name").get<std::string>();
    f.size = j.at("size").get<std::int64_t>();
    f.content_hash = j.at("content_hash").get<std::string>();
    f.repo_id = j.at("repo").is_null() ? kNoRepo : j.at("repo").get<std::int64_t>();
    return f;
}

RepoRecord repo_from_json(const ordered_json& j) {
    RepoRecord r;
    r.repo_id = j.at("repo").get<std::int64_t>();
    r.full_name = j.at("full_name").get<std::string>();
    r.description = j.at("description").get<std::string>();
    r.stars = j.at("stars").get<std::int64_t>();
    return r;
}

AliasRow alias_from_json(const ordered_json& j) {
    AliasRow a;
    a.alias_id = -1;  // reassigned by caller from row order
    a.file_id = j.at("file").get<std::int64_t>();
    a.line = j.at("line").get<int>();
    a.name = j.at("name").get<std::string>();
    a.value = j.at("value").get<std::string>();
    a.n_commands = j.at("n_commands").get<int>();
    a.mid_line = j.value("mid_line", false);
    return a;
}

CommandRow command_from_json(const ordered_json& j) {
    CommandRow c;
    c.command_id = -1;
    c.alias_id = j.at("alias_ref").get<std::int64_t>();
    c.position = j.at("position").get<int>();
    c.name = j.at("name").get<std::string>();
    c.sudo = j.at("sudo").get<bool>();
    c.env_prefixes = j.at("env_prefixes").get<std::vector<std::string>>();
    auto sep = separator_from_name(j.at("separator_after").get<std::string>());
    if (!sep)
        throw std::runtime_error("unknown separator in store");
    c.separator_after = *sep;
    return c;
}

ArgumentRow argument_from_json(const ordered_json& j) {
    ArgumentRow a;
    a.command_id = j.at("command_ref").get<std::int64_t>();
    a.position = j.at("position").get<int>();
    a.text = j.at("text").get<std::string>();
    return a;
}

LabelRow label_from_json(const ordered_json& j) {
    LabelRow l;
    l.alias_id = j.at("alias_ref").get<std::int64_t>();
    auto kind = practice_from_name(j.at("kind").get<std::string>());
    if (!kind)
        throw std::runtime_error("unknown practice kind in store");
    l.kind = *kind;
    l.evidence = j.at("evidence").get<std::string>();
    l.typo_fix = j.value("typo_fix", false);
    return l;
}

}  // namespace

CorpusStore CorpusStore::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open store: " + path);
    ordered_json doc = ordered_json::parse(in);

    CorpusStore store;
    store.hash_algorithm = doc.value("hash_algorithm", "sha1") == "sha256"
                               ? HashAlgorithm::Sha256
                               : HashAlgorithm::Sha1;
    if (doc.contains("tally")) {
        store.tally.non_posix = doc["tally"].value("non_posix", 0);
        store.tally.flag_form = doc["tally"].value("flag_form", 0);
        store.tally.malformed = doc["tally"].value("malformed", 0);
    }
    for (const auto& j : doc.value("repos", ordered_json::array()))
        store.repos.push_back(repo_from_json(j));
    for (const auto& j : doc.value("files", ordered_json::array())) {
        store.files.push_back(file_from_json(j));
        store.seen_hashes_.insert(store.files.back().content_hash);
    }
    std::int64_t next_alias = 0;
    for (const auto& j : doc.value("aliases", ordered_json::array())) {
        store.aliases.push_back(alias_from_json(j));
        store.aliases.back().alias_id = next_alias++;
    }
    std::int64_t next_command = 0;
    for (const auto& j : doc.value("commands", ordered_json::array())) {
        store.commands.push_back(command_from_json(j));
        store.commands.back().command_id = next_command++;
    }
    for (const auto& j : doc.value("arguments", ordered_json::array()))
        store.arguments.push_back(argument_from_json(j));
    for (const auto& j : doc.value("labels", ordered_json::array()))
        store.labels.push_back(label_from_json(j));
    return store;
}

bool CorpusStore::check_integrity(std::string* problem) const {
    auto fail = [&](std::string msg) {
        if (problem)
            *problem = std::move(msg);
        return false;
    };
    std::unordered_set<std::string> hashes;
    for (const auto& f : files) {
        if (!hashes.insert(f.content_hash).second)
            return fail("duplicate content hash: " + f.content_hash);
        if (f.repo_id != kNoRepo &&
            (f.repo_id < 0 || f.repo_id >= static_cast<std::int64_t>(repos.size())))
            return fail("file " + f.path + " references missing repo");
    }
    for (const auto& a : aliases)
        if (a.file_id < 0 || a.file_id >= static_cast<std::int64_t>(files.size()))
            return fail("alias " + a.name + " references missing file");
    std::vector<int> next_position(aliases.size(), 0);
    for (const auto& c : commands) {
        if (c.alias_id < 0 || c.alias_id >= static_cast<std::int64_t>(aliases.size()))
            return fail("command references missing alias");
        if (c.position != next_position[c.alias_id]++)
            return fail("command positions not dense for alias " +
                        aliases[c.alias_id].name);
    }
    std::vector<int> next_arg(commands.size(), 0);
    for (const auto& a : arguments) {
        if (a.command_id < 0 || a.command_id >= static_cast<std::int64_t>(commands.size()))
            return fail("argument references missing command");
        if (a.position != next_arg[a.command_id]++)
            return fail("argument positions not dense");
    }
    for (const auto& l : labels)
        if (l.alias_id < 0 || l.alias_id >= static_cast<std::int64_t>(aliases.size()))
            return fail("label references missing alias");
    for (std::size_t i = 0; i < aliases.size(); ++i)
        if (aliases[i].alias_id != static_cast<std::int64_t>(i))
            return fail("alias ids not dense");
    return true;
}

// ---------------------------------------------------------------------------
// Export / import
// ---------------------------------------------------------------------------

std::optional<ExportKind> export_kind_from_name(std::string_view name) {
    if (name == "repos") return ExportKind::Repos;
    if (name == "files") return ExportKind::Files;
    if (name == "aliases") return ExportKind::Aliases;
    if (name == "commands") return ExportKind::Commands;
    if (name == "arguments") return ExportKind::Arguments;
    if (name == "labels") return ExportKind::Labels;
    return std::nullopt;
}

std::string_view export_kind_name(ExportKind kind) {
    switch (kind) {
        case ExportKind::Repos: return "repos";
        case ExportKind::Files: return "files";
        case ExportKind::Aliases: return "aliases";
        case ExportKind::Commands: return "commands";
        case ExportKind::Arguments: return "arguments";
        case ExportKind::Labels: return "labels";
    }
    return "";
}

namespace {

std::string join_spaces(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += ' ';
        out += parts[i];
    }
    return out;
}

}  // namespace

Table export_table(const CorpusStore& store, ExportKind kind) {
    Table t;
    switch (kind) {
        case ExportKind::Repos:
            t.columns = {"repo", "full_name", "description", "stars"};
            for (const auto& r : store.repos)
                t.rows.push_back({std::to_string(r.repo_id), r.full_name, r.description,
                                  std::to_string(r.stars)});
            break;
        case ExportKind::Files:
            t.columns = {"file", "path", "name", "size", "content_hash", "repo"};
            for (const auto& f : store.files)
                t.rows.push_back({std::to_string(f.file_id), f.path, f.name,
                                  std::to_string(f.size), f.content_hash,
                                  f.repo_id == kNoRepo ? "" : std::to_string(f.repo_id)});
            break;
        case ExportKind::Aliases:
            t.columns = {"file", "line", "name", "value", "n_commands", "mid_line"};
            for (const auto& a : store.aliases)
                t.rows.push_back({std::to_string(a.file_id), std::to_string(a.line), a.name,
                                  a.value, std::to_string(a.n_commands),
                                  a.mid_line ? "true" : "false"});
            break;
        case ExportKind::Commands:
            t.columns = {"alias_ref", "position", "name", "sudo", "env_prefixes",
                         "separator_after"};
            for (const auto& c : store.commands)
                t.rows.push_back({std::to_string(c.alias_id), std::to_string(c.position),
                                  c.name, c.sudo ? "true" : "false",
                                  join_spaces(c.env_prefixes),
                                  std::string(separator_name(c.separator_after))});
            break;
        case ExportKind::Arguments:
            t.columns = {"command_ref", "position", "text"};
            for (const auto& a : store.arguments)
                t.rows.push_back(
                    {std::to_string(a.command_id), std::to_string(a.position), a.text});
            break;
        case ExportKind::Labels:
            t.columns = {"alias_ref", "kind", "evidence", "typo_fix"};
            for (const auto& l : store.labels)
                t.rows.push_back({std::to_string(l.alias_id),
                                  std::string(practice_name(l.kind)), l.evidence,
                                  l.typo_fix ? "true" : "false"});
            break;
    }
    return t;
}

std::string export_jsonl(const CorpusStore& store, ExportKind kind) {
    std::string out;
    auto emit = [&](const ordered_json& j) {
        out += j.dump();
        out += '\n';
    };
    switch (kind) {
        case ExportKind::Repos:
            for (const auto& r : store.repos)
                emit(repo_to_json(r));
            break;
        case ExportKind::Files:
            for (const auto& f : store.files)
                emit(file_to_json(f));
            break;
        case ExportKind::Aliases:
            for (const auto& a : store.aliases)
                emit(alias_to_json(a));
            break;
        case ExportKind::Commands:
            for (const auto& c : store.commands)
                emit(command_to_json(c));
            break;
        case ExportKind::Arguments:
            for (const auto& a : store.arguments)
                emit(argument_to_json(a));
            break;
        case ExportKind::Labels:
            for (const auto& l : store.labels)
                emit(label_to_json(l));
            break;
    }
    return out;
}

std::vector<AliasDefinition> materialize_aliases(const CorpusStore& store) {
    std::vector<AliasDefinition> defs(store.aliases.size());
    for (std::size_t i = 0; i < store.aliases.size(); ++i) {
        const AliasRow& a = store.aliases[i];
        defs[i].name = a.name;
        defs[i].value = a.value;
        defs[i].file_id = std::to_string(a.file_id);
        defs[i].line = a.line;
        defs[i].mid_line = a.mid_line;
    }
    std::vector<std::vector<std::string>> args(store.commands.size());
    for (const auto& arg : store.arguments)
        args[arg.command_id].push_back(arg.text);
    for (std::size_t i = 0; i < store.commands.size(); ++i) {
        const CommandRow& c = store.commands[i];
        ParsedCommand pc;
        pc.env_prefixes = c.env_prefixes;
        pc.name = c.name;
        pc.arguments = std::move(args[i]);
        pc.sudo = c.sudo;
        pc.separator_after = c.separator_after;
        defs[c.alias_id].commands.push_back(std::move(pc));
    }
    return defs;
}

void import_table(CorpusStore& store, std::string_view jsonl, const std::string& what) {
    auto kind = export_kind_from_name(what);
    if (!kind)
        throw std::runtime_error("unknown table: " + what);
    std::istringstream in{std::string(jsonl)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        ordered_json j = ordered_json::parse(line);
        switch (*kind) {
            case ExportKind::Repos:
                store.repos.push_back(repo_from_json(j));
                break;
            case ExportKind::Files:
                store.files.push_back(file_from_json(j));
                store.seen_hashes_.insert(store.files.back().content_hash);
                break;
            case ExportKind::Aliases:
                store.aliases.push_back(alias_from_json(j));
                store.aliases.back().alias_id =
                    static_cast<std::int64_t>(store.aliases.size()) - 1;
                break;
            case ExportKind::Commands:
                store.commands.push_back(command_from_json(j));
                store.commands.back().command_id =
                    static_cast<std::int64_t>(store.commands.size()) - 1;
                break;
            case ExportKind::Arguments:
                store.arguments.push_back(argument_from_json(j));
                break;
            case ExportKind::Labels:
                store.labels.push_back(label_from_json(j));
                break;
        }
    }
}

}  // namespace aliasmine
