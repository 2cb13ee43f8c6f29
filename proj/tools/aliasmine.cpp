// aliasmine: mine shell alias definitions from dotfiles, classify the
// customization practices they express, reproduce the aggregate tables,
// learn repair rules, and run size-partitioned code-search harvests.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aliasmine/analytics.hpp"
#include "aliasmine/corpus.hpp"
#include "aliasmine/harvester.hpp"
#include "aliasmine/pipeline.hpp"
#include "aliasmine/suggest.hpp"

namespace {

using namespace aliasmine;
using ordered_json = nlohmann::ordered_json;

struct GlobalOptions {
    std::string store_path;
    std::string kb_dir;
    bool json = false;
    std::uint64_t seed = 0;
};

std::string default_config_path() {
    const char* home = std::getenv("HOME");
    if (!home)
        return "";
    return std::string(home) + "/.config/aliasmine/config";
}

CorpusStore open_store(const GlobalOptions& global) {
    if (global.store_path.empty())
        throw CLI::ValidationError("--store is required for this command");
    return CorpusStore::load(global.store_path);
}

KnowledgeBase open_kb(const GlobalOptions& global) {
    if (global.kb_dir.empty())
        return default_knowledge_base();
    return load_knowledge_base(global.kb_dir);
}

void emit_table(const Table& table, const GlobalOptions& global) {
    std::cout << (global.json ? table.to_jsonl() : table.to_csv());
}

void write_text_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

struct ScanArgs {
    std::vector<std::string> paths;
    std::vector<std::string> include;
    bool all = false;
};

void run_scan(const GlobalOptions& global, const ScanArgs& args) {
    if (global.store_path.empty())
        throw CLI::ValidationError("--store is required for this command");

    ScanOptions options;
    if (!args.include.empty())
        options.include_patterns = args.include;
    options.all_files = args.all;

    ScanResult scanned = scan(args.paths, options);
    if (scanned.unreadable)
        std::cerr << "warning: " << scanned.unreadable << " path(s) unreadable, skipped\n";

    CorpusStore store;
    if (std::filesystem::exists(global.store_path))
        store = CorpusStore::load(global.store_path);
    IngestReport report = ingest(store, scanned.files);
    report.files_unreadable = scanned.unreadable;
    store.save(global.store_path);

    if (global.json) {
        ordered_json j;
        j["files_seen"] = report.files_seen;
        j["duplicates_dropped"] = report.duplicates_dropped;
        j["aliases_parsed"] = report.aliases_parsed;
        j["statements_skipped"] = report.statements_skipped;
        j["files_unreadable"] = report.files_unreadable;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "files_seen=" << report.files_seen
                  << " duplicates_dropped=" << report.duplicates_dropped
                  << " aliases_parsed=" << report.aliases_parsed
                  << " statements_skipped=" << report.statements_skipped
                  << " files_unreadable=" << report.files_unreadable << "\n";
    }
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

void run_classify(const GlobalOptions& global) {
    CorpusStore store = open_store(global);
    KnowledgeBase kb = open_kb(global);

    std::vector<AliasDefinition> defs = materialize_aliases(store);
    auto labels = classify_batch_parallel(defs, kb);

    store.labels.clear();
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (const PracticeLabel& label : labels[i])
            store.labels.push_back({static_cast<std::int64_t>(i), label.kind, label.evidence,
                                    label.typo_fix});
    store.save(global.store_path);

    if (global.json) {
        ordered_json j;
        j["aliases"] = defs.size();
        j["labels"] = store.labels.size();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "aliases=" << defs.size() << " labels=" << store.labels.size() << "\n";
    }
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

struct StatsArgs {
    std::string table;
    std::size_t top = 10;
    double min_share = 0.10;
    std::size_t bins = 40;
    std::size_t length = 3;
    std::string command;
    SampleOptions sample;
};

void run_stats(const GlobalOptions& global, const StatsArgs& args) {
    CorpusStore store = open_store(global);

    Table table;
    if (args.table == "top-names") {
        table = top_names(store, args.top);
    } else if (args.table == "top-commands") {
        table = top_commands(store, args.top);
    } else if (args.table == "top-arguments") {
        table = top_arguments(store, args.top);
    } else if (args.table == "command-breakdown") {
        if (args.command.empty())
            throw CLI::ValidationError("command-breakdown needs --command");
        table = command_breakdown(store, args.command, args.top, 3);
    } else if (args.table == "compression") {
        table = compression_histogram(store, args.bins);
    } else if (args.table == "pipelines") {
        table = pipeline_flows(store, args.length, args.min_share);
    } else if (args.table == "provenance-files") {
        table = provenance_files(store);
    } else if (args.table == "provenance-words") {
        table = provenance_words(store, open_kb(global), args.top);
    } else if (args.table == "practices") {
        table = practice_matrix(store, args.top);
    } else if (args.table == "sample") {
        SampleOptions options = args.sample;
        options.seed = global.seed;
        table = representative_sample(store, options);
    } else {
        throw CLI::ValidationError("unknown stats table: " + args.table);
    }
    emit_table(table, global);
}

// ---------------------------------------------------------------------------
// export
// ---------------------------------------------------------------------------

struct ExportArgs {
    std::string what;
    std::string format = "jsonl";
    std::string out = "-";
};

void run_export(const GlobalOptions& global, const ExportArgs& args) {
    CorpusStore store = open_store(global);
    auto kind = export_kind_from_name(args.what);
    if (!kind)
        throw CLI::ValidationError("unknown table: " + args.what);

    std::string payload;
    std::size_t rows = 0;
    if (args.format == "jsonl") {
        payload = export_jsonl(store, *kind);
        for (char c : payload)
            rows += c == '\n';
    } else if (args.format == "csv") {
        Table table = export_table(store, *kind);
        rows = table.rows.size();
        payload = table.to_csv();
    } else {
        throw CLI::ValidationError("unknown format: " + args.format);
    }
    write_text_file(args.out, payload);
    if (args.out != "-")
        std::cerr << rows << " row(s) written to " << args.out << "\n";
}

// ---------------------------------------------------------------------------
// suggest
// ---------------------------------------------------------------------------

struct SuggestBuildArgs {
    std::string out;
    double min_support = 0.8;
    std::uint64_t min_count = 5;
};

void run_suggest_build(const GlobalOptions& global, const SuggestBuildArgs& args) {
    CorpusStore store = open_store(global);
    if (store.labels.empty() && !store.aliases.empty()) {
        // Rule mining needs practice labels; classify on the fly.
        KnowledgeBase kb = open_kb(global);
        auto defs = materialize_aliases(store);
        auto labels = classify_batch_parallel(defs, kb);
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (const PracticeLabel& label : labels[i])
                store.labels.push_back({static_cast<std::int64_t>(i), label.kind,
                                        label.evidence, label.typo_fix});
    }
    BuildOptions options{args.min_support, args.min_count};
    RuleSet rules = build_rules(store, options);
    write_text_file(args.out, rules_to_jsonl(rules));
    std::cerr << "sudo=" << rules.sudo_rules.size() << " order=" << rules.order_rules.size()
              << " chain=" << rules.chain_rules.size() << " known=" << rules.typo_index.size()
              << "\n";
}

struct SuggestFixArgs {
    std::string rules_path;
    std::size_t k = 3;
    std::vector<std::string> words;
};

void run_suggest_fix(const GlobalOptions& global, const SuggestFixArgs& args) {
    if (args.rules_path.empty())
        throw CLI::ValidationError("--rules is required");
    RuleSet rules = rules_from_jsonl(read_text_file(args.rules_path));

    std::string line;
    for (const auto& word : args.words) {
        if (!line.empty())
            line += ' ';
        line += word;
    }
    std::vector<Suggestion> suggestions = suggest(line, rules, args.k);

    if (global.json) {
        for (const auto& s : suggestions) {
            ordered_json j;
            j["score"] = s.score;
            j["kind"] = std::string(rule_kind_name(s.rule_kind));
            j["replacement"] = s.replacement;
            j["evidence"] = s.evidence;
            std::cout << j.dump() << "\n";
        }
    } else {
        for (const auto& s : suggestions)
            std::cout << format_double(s.score) << "\t" << rule_kind_name(s.rule_kind) << "\t"
                      << s.replacement << "\n";
    }
}

// ---------------------------------------------------------------------------
// harvest
// ---------------------------------------------------------------------------

struct HarvestArgs {
    std::string term = "alias";
    std::int64_t max_size = 29000;
    std::int64_t step = 100;
    std::string backend = "sim";
    std::int64_t population = 10000;
    std::int64_t spike_lo = 0;
    std::int64_t spike_hi = 0;
    std::int64_t spike_count = 0;
    int rate = 30;
    bool refine = true;
};

void run_harvest_plan(const GlobalOptions& global, const HarvestArgs& args) {
    HarvestPlan p = plan(args.term, args.max_size, args.step);
    Table table;
    table.columns = {"lo", "hi", "query"};
    for (const ByteRange& range : p.ranges)
        table.rows.push_back({std::to_string(range.lo), std::to_string(range.hi),
                              build_query(p.term, range.lo, range.hi)});
    emit_table(table, global);
}

void run_harvest_run(const GlobalOptions& global, const HarvestArgs& args) {
    std::unique_ptr<SearchBackend> owned;
    SimulatedClock sim_clock;
    SystemClock system_clock;
    ExecuteOptions options;
    options.rate_limit_per_min = args.rate;

    if (args.backend == "sim") {
        SimulationConfig config;
        config.seed = global.seed ? global.seed : 42;
        config.population = args.population;
        config.max_size = args.max_size;
        config.spike_lo = args.spike_lo;
        config.spike_hi = args.spike_hi;
        config.spike_count = args.spike_count;
        owned = std::make_unique<SimulatedBackend>(config);
        options.clock = &sim_clock;  // simulated time, no real waiting
    } else if (args.backend == "http") {
        HttpBackendConfig config;
        if (const char* token = std::getenv("ALIASMINE_TOKEN"))
            config.token = token;
        owned = make_http_backend(config);
        options.clock = &system_clock;
    } else {
        throw CLI::ValidationError("unknown backend: " + args.backend);
    }

    RateLimiter limiter(*options.clock, options.rate_limit_per_min);
    options.limiter = &limiter;

    HarvestPlan initial = plan(args.term, args.max_size, args.step);
    HarvestPlan final_plan =
        args.refine ? refine_to_fixpoint(initial, *owned, options) : initial;
    HarvestOutcome outcome = execute(final_plan, *owned, options);

    if (!global.store_path.empty()) {
        CorpusStore store;
        if (std::filesystem::exists(global.store_path))
            store = CorpusStore::load(global.store_path);
        std::vector<ScannedFile> stream;
        stream.reserve(outcome.records.size());
        for (const HarvestedFile& file : outcome.records) {
            ScannedFile scanned;
            scanned.record.path = file.repo_full_name + "/" + file.path;
            scanned.record.name = std::filesystem::path(file.path).filename().string();
            scanned.record.size = static_cast<std::int64_t>(file.contents.size());
            scanned.record.repo_id = store.add_repo(file.repo_full_name, "", 0);
            scanned.contents = file.contents;
            stream.push_back(std::move(scanned));
        }
        IngestReport report = ingest(store, stream);
        store.save(global.store_path);
        std::cerr << "ingested " << report.aliases_parsed << " aliases ("
                  << report.duplicates_dropped << " duplicate files dropped)\n";
    }

    if (global.json) {
        ordered_json j;
        j["retrieved"] = outcome.report.retrieved;
        j["estimated_population"] = outcome.report.estimated_population;
        j["coverage"] = outcome.report.coverage;
        j["ranges"] = outcome.report.ranges.size();
        j["requests"] = outcome.report.request_log.size();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "retrieved=" << outcome.report.retrieved
                  << " estimated_population=" << outcome.report.estimated_population
                  << " coverage=" << format_double(outcome.report.coverage)
                  << " ranges=" << outcome.report.ranges.size()
                  << " requests=" << outcome.report.request_log.size() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aliasmine: shell alias corpus miner"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--store", global.store_path, "Corpus store path");
    app.add_option("--kb-dir", global.kb_dir, "Knowledge base directory override");
    app.add_flag("--json", global.json, "Emit JSONL instead of CSV/text");
    app.add_option("--seed", global.seed, "Seed for sampling operations");
    app.set_config("--config", default_config_path(), "Key-value config file");

    auto* scan_cmd = app.add_subcommand("scan", "Scan dotfiles into the store");
    ScanArgs scan_args;
    scan_cmd->add_option("paths", scan_args.paths, "Files or directories")->required();
    scan_cmd->add_option("--include", scan_args.include, "Filename glob (repeatable)");
    scan_cmd->add_flag("--all", scan_args.all, "Scan every file, no pattern filter");

    auto* classify_cmd =
        app.add_subcommand("classify", "Label aliases with customization practices");

    auto* stats_cmd = app.add_subcommand("stats", "Aggregate tables over the store");
    StatsArgs stats_args;
    stats_cmd
        ->add_option("table", stats_args.table,
                     "top-names|top-commands|top-arguments|command-breakdown|compression|"
                     "pipelines|provenance-files|provenance-words|practices|sample")
        ->required();
    stats_cmd->add_option("--top", stats_args.top, "Rows to keep");
    stats_cmd->add_option("--min-share", stats_args.min_share, "Pipeline edge cutoff");
    stats_cmd->add_option("--bins", stats_args.bins, "Histogram bin count");
    stats_cmd->add_option("--length", stats_args.length, "Pipeline length");
    stats_cmd->add_option("--command", stats_args.command, "Command for breakdown");
    stats_cmd->add_option("--sample-commands", stats_args.sample.n_cmds, "Top commands");
    stats_cmd->add_option("--sample-args", stats_args.sample.n_args, "Arg combos per command");
    stats_cmd->add_option("--sample-aliases", stats_args.sample.n_aliases,
                          "Alias names per combo");
    stats_cmd->add_option("--long-tail", stats_args.sample.long_tail, "Long tail draw size");

    auto* export_cmd = app.add_subcommand("export", "Write a table as JSONL or CSV");
    ExportArgs export_args;
    export_cmd
        ->add_option("--what", export_args.what,
                     "repos|files|aliases|commands|arguments|labels")
        ->required();
    export_cmd->add_option("--format", export_args.format, "jsonl|csv");
    export_cmd->add_option("--out", export_args.out, "Output path ('-' = stdout)");

    auto* suggest_cmd = app.add_subcommand("suggest", "Repair rules and fixes");
    suggest_cmd->require_subcommand(1);
    auto* build_cmd = suggest_cmd->add_subcommand("build", "Mine rules from the store");
    SuggestBuildArgs build_args;
    build_cmd->add_option("--out", build_args.out, "Rules output path")->required();
    build_cmd->add_option("--min-support", build_args.min_support, "Sudo support floor");
    build_cmd->add_option("--min-count", build_args.min_count, "Occurrence floor");
    auto* fix_cmd = suggest_cmd->add_subcommand("fix", "Suggest fixes for a command line");
    SuggestFixArgs fix_args;
    fix_cmd->add_option("--rules", fix_args.rules_path, "Rules file from suggest build");
    fix_cmd->add_option("-k,--top", fix_args.k, "Suggestions to return");
    fix_cmd->add_option("words", fix_args.words, "Command line (after --)")->required();

    auto* harvest_cmd = app.add_subcommand("harvest", "Size-partitioned code search");
    harvest_cmd->require_subcommand(1);
    HarvestArgs harvest_args;
    auto add_harvest_options = [&](CLI::App* cmd, bool run) {
        cmd->add_option("--term", harvest_args.term, "Search term");
        cmd->add_option("--max-size", harvest_args.max_size, "Largest file size in bytes");
        cmd->add_option("--step", harvest_args.step, "Initial range width");
        if (run) {
            cmd->add_option("--backend", harvest_args.backend, "sim|http");
            cmd->add_option("--population", harvest_args.population, "Simulated files");
            cmd->add_option("--spike-lo", harvest_args.spike_lo, "Dense band start");
            cmd->add_option("--spike-hi", harvest_args.spike_hi, "Dense band end");
            cmd->add_option("--spike-count", harvest_args.spike_count, "Dense band files");
            cmd->add_option("--rate", harvest_args.rate, "Requests per minute");
            cmd->add_flag("--no-refine{false}", harvest_args.refine, "Skip refinement");
        }
    };
    auto* plan_cmd = harvest_cmd->add_subcommand("plan", "Print the range schedule");
    add_harvest_options(plan_cmd, false);
    auto* run_cmd = harvest_cmd->add_subcommand("run", "Execute the harvest");
    add_harvest_options(run_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (scan_cmd->parsed())
            run_scan(global, scan_args);
        else if (classify_cmd->parsed())
            run_classify(global);
        else if (stats_cmd->parsed())
            run_stats(global, stats_args);
        else if (export_cmd->parsed())
            run_export(global, export_args);
        else if (suggest_cmd->parsed()) {
            if (build_cmd->parsed())
                run_suggest_build(global, build_args);
            else
                run_suggest_fix(global, fix_args);
        } else if (harvest_cmd->parsed()) {
            if (plan_cmd->parsed())
                run_harvest_plan(global, harvest_args);
            else
                run_harvest_run(global, harvest_args);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
