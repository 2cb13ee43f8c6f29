// Acceptance suite: one check per release criterion, one PASS/FAIL line
// each, nonzero exit if anything fails. Expected values are frozen here;
// the oracles (brute-force edit search, sort-based medians, generator
// ground truth, simulation ground truth) are independent of the library
// code they check.

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "aliasmine/analytics.hpp"
#include "aliasmine/corpus.hpp"
#include "aliasmine/edit_distance.hpp"
#include "aliasmine/harvester.hpp"
#include "aliasmine/hash.hpp"
#include "aliasmine/pipeline.hpp"
#include "aliasmine/suggest.hpp"
#include "support/edit_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/statement_gen.hpp"

using namespace aliasmine;

namespace {

struct Criterion {
    int number;
    std::string name;
    double time_limit_s;
    std::function<void(std::vector<std::string>&)> body;
};

double run_seconds(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void expect(std::vector<std::string>& failures, bool ok, const std::string& what) {
    if (!ok)
        failures.push_back(what);
}

void label_store(CorpusStore& store) {
    KnowledgeBase kb = default_knowledge_base();
    auto defs = materialize_aliases(store);
    auto labels = classify_batch_serial(defs, kb);
    store.labels.clear();
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (const auto& label : labels[i])
            store.labels.push_back(
                {static_cast<std::int64_t>(i), label.kind, label.evidence, label.typo_fix});
}

// --------------------------------------------------------------------------
// 1. Golden decomposition of the three-stage pipeline alias, byte-exact
//    in the JSONL export. Expected lines derived by hand.
// --------------------------------------------------------------------------
void criterion_golden(std::vector<std::string>& failures) {
    CorpusStore store;
    store.ingest_file("fig/.bashrc",
                      R"(alias ips="ifconfig | grep 'inet ' | cut -d' ' -f2")");

    const std::string aliases_expected =
        R"({"file":0,"line":1,"name":"ips","value":"ifconfig | grep 'inet ' | cut -d' ' -f2","n_commands":3,"mid_line":false})"
        "\n";
    const std::string commands_expected =
        R"({"alias_ref":0,"position":0,"name":"ifconfig","sudo":false,"env_prefixes":[],"separator_after":"pipe"})"
        "\n"
        R"({"alias_ref":0,"position":1,"name":"grep","sudo":false,"env_prefixes":[],"separator_after":"pipe"})"
        "\n"
        R"({"alias_ref":0,"position":2,"name":"cut","sudo":false,"env_prefixes":[],"separator_after":"none"})"
        "\n";
    const std::string arguments_expected =
        R"({"command_ref":1,"position":0,"text":"inet "})"
        "\n"
        R"({"command_ref":2,"position":0,"text":"-d "})"
        "\n"
        R"({"command_ref":2,"position":1,"text":"-f2"})"
        "\n";

    expect(failures, export_jsonl(store, ExportKind::Aliases) == aliases_expected,
           "alias JSONL differs from the golden line");
    expect(failures, export_jsonl(store, ExportKind::Commands) == commands_expected,
           "command JSONL differs from the golden lines");
    expect(failures, export_jsonl(store, ExportKind::Arguments) == arguments_expected,
           "argument JSONL differs from the golden lines");
}

// --------------------------------------------------------------------------
// 2. Parser property suite over generated statements: reassembly equals the
//    generator's canonical form, command counts match what was generated.
// --------------------------------------------------------------------------
void criterion_parser_properties(std::vector<std::string>& failures) {
    testgen::StatementGen gen(20240101);
    const int kStatements = 10000;
    int violations = 0;
    int pairs_checked = 0;
    for (int i = 0; i < kStatements; ++i) {
        testgen::GeneratedStatement stmt = gen.next();
        ExtractResult extracted = extract_aliases(stmt.text + "\n", "gen");
        if (extracted.occurrences.size() != stmt.pairs.size()) {
            ++violations;
            continue;
        }
        for (std::size_t p = 0; p < stmt.pairs.size(); ++p) {
            auto def = parse_definition(extracted.occurrences[p]);
            const auto& expectpair = stmt.pairs[p];
            if (!def || def->name != expectpair.name ||
                static_cast<int>(def->commands.size()) != expectpair.command_count ||
                reassemble(def->commands) != expectpair.canonical_value) {
                ++violations;
                continue;
            }
            for (std::size_t c = 0; c < def->commands.size(); ++c)
                if (def->commands[c].arguments != expectpair.arg_tokens[c])
                    ++violations;
            ++pairs_checked;
        }
    }
    expect(failures, violations == 0,
           "invariant violations: " + std::to_string(violations));
    expect(failures, pairs_checked >= kStatements,
           "checked fewer pairs than statements generated");
}

// --------------------------------------------------------------------------
// 3. Edit distance equals exhaustive brute-force search for every pair over
//    {a,b,c} with lengths <= 4.
// --------------------------------------------------------------------------
void criterion_edit_oracle(std::vector<std::string>& failures) {
    auto strings = testoracle::all_strings("abc", 4);  // 121 strings
    std::size_t mismatches = 0;
    std::size_t pairs = 0;
    for (const auto& a : strings)
        for (const auto& b : strings) {
            ++pairs;
            if (damerau_levenshtein(a, b) != testoracle::bfs_edit_distance(a, b, "abc"))
                ++mismatches;
        }
    expect(failures, pairs == 14641, "expected 14641 pairs, saw " + std::to_string(pairs));
    expect(failures, mismatches == 0, std::to_string(mismatches) + " oracle mismatches");
}

// --------------------------------------------------------------------------
// 4. The hand-labeled corpus classifies with zero disagreements and zero
//    extra labels.
// --------------------------------------------------------------------------
void criterion_labeled_corpus(std::vector<std::string>& failures) {
    KnowledgeBase kb = default_knowledge_base();
    const auto& corpus = fixtures::labeled_corpus();
    expect(failures, corpus.size() >= 50,
           "fixture corpus smaller than 50: " + std::to_string(corpus.size()));
    int disagreements = 0;
    for (const auto& entry : corpus) {
        AliasDefinition def = fixtures::parse_fixture(entry.statement);
        std::set<PracticeKind> kinds;
        bool typo = false;
        for (const auto& label : classify(def, kb)) {
            kinds.insert(label.kind);
            if (label.kind == PracticeKind::Nicknaming)
                typo = label.typo_fix;
        }
        bool ok = kinds == entry.expected;
        if (entry.expected.count(PracticeKind::Nicknaming))
            ok = ok && typo == entry.typo_fix;
        if (!ok) {
            ++disagreements;
            failures.push_back(std::string("label mismatch: ") + entry.statement);
        }
    }
    expect(failures, disagreements == 0,
           std::to_string(disagreements) + " fixture disagreements");
}

// --------------------------------------------------------------------------
// 5. Compression ratio exactness + histogram mass + median recovery against
//    a sort-based oracle.
// --------------------------------------------------------------------------
void criterion_compression(std::vector<std::string>& failures) {
    AliasDefinition gs = fixtures::parse_fixture("alias gs='git status'");
    expect(failures, compression_ratio(gs) == 5.0, "gs ratio is not exactly 5.0");

    CorpusStore store;
    store.ingest_file(".bashrc", fixtures::corpus_as_dotfile());
    const std::size_t bins = 24;
    Table hist = compression_histogram(store, bins);

    std::uint64_t total = 0;
    for (const auto& row : hist.rows)
        total += std::stoull(row[2]);
    expect(failures, total == store.aliases.size(), "histogram mass != alias count");

    // sort-based median oracle
    std::vector<double> ratios;
    for (const auto& a : store.aliases)
        ratios.push_back(static_cast<double>(a.value.size()) /
                         static_cast<double>(a.name.size()));
    std::sort(ratios.begin(), ratios.end());
    double exact = ratios.size() % 2 == 1
                       ? ratios[ratios.size() / 2]
                       : 0.5 * (ratios[ratios.size() / 2 - 1] + ratios[ratios.size() / 2]);

    std::uint64_t cumulative = 0;
    std::size_t median_bin = 0;
    for (std::size_t i = 0; i < hist.rows.size(); ++i) {
        cumulative += std::stoull(hist.rows[i][2]);
        if (cumulative * 2 >= total) {
            median_bin = i;
            break;
        }
    }
    std::size_t exact_bin = 0;
    for (std::size_t i = 0; i < hist.rows.size(); ++i) {
        double lo = std::stod(hist.rows[i][0]);
        double hi = std::stod(hist.rows[i][1]);
        if (exact >= lo && (exact < hi || i + 1 == hist.rows.size()))
            exact_bin = i;
    }
    std::size_t gap = median_bin > exact_bin ? median_bin - exact_bin : exact_bin - median_bin;
    expect(failures, gap <= 1,
           "median bin off by " + std::to_string(gap) + " bins from the sort oracle");
}

// --------------------------------------------------------------------------
// 6. Analytics determinism: byte-identical reruns, bounded percent sums.
// --------------------------------------------------------------------------
void criterion_determinism(std::vector<std::string>& failures) {
    CorpusStore store;
    store.ingest_file(".bashrc", fixtures::corpus_as_dotfile());
    testgen::StatementGen gen(77);
    std::string noise;
    for (int i = 0; i < 200; ++i)
        noise += gen.next().text + "\n";
    store.ingest_file("extra/.zshrc", noise);
    store.add_repo("u/dots", "My dotfiles and configuration files", 9);
    label_store(store);

    KnowledgeBase kb = default_knowledge_base();
    std::vector<std::pair<std::string, std::function<Table()>>> ops = {
        {"top-names", [&] { return top_names(store, 25); }},
        {"top-commands", [&] { return top_commands(store, 25); }},
        {"top-arguments", [&] { return top_arguments(store, 25); }},
        {"command-breakdown", [&] { return command_breakdown(store, "git", 10, 3); }},
        {"compression", [&] { return compression_histogram(store, 16); }},
        {"pipelines", [&] { return pipeline_flows(store, 3, 0.0); }},
        {"provenance-files", [&] { return provenance_files(store); }},
        {"provenance-words", [&] { return provenance_words(store, kb, 10); }},
        {"practices", [&] { return practice_matrix(store, 15); }},
        {"sample",
         [&] {
             SampleOptions options;
             options.seed = 42;
             return representative_sample(store, options);
         }},
    };
    for (const auto& [name, op] : ops) {
        Table first = op();
        Table second = op();
        expect(failures, first.to_csv() == second.to_csv(), name + " not byte-identical");
        expect(failures, first.to_jsonl() == second.to_jsonl(),
               name + " JSONL not byte-identical");
    }

    for (const char* name : {"top-names", "top-commands", "top-arguments"}) {
        Table t = name == std::string("top-names")  ? top_names(store, 100000)
                  : name == std::string("top-commands") ? top_commands(store, 100000)
                                                        : top_arguments(store, 100000);
        double sum = 0;
        for (const auto& row : t.rows)
            sum += std::stod(row[2]);
        expect(failures, sum <= 100.0 + 0.01 * static_cast<double>(t.rows.size()),
               std::string(name) + " percent sum exceeds slack: " + std::to_string(sum));
    }
}

// --------------------------------------------------------------------------
// 7. The three repair scenarios come back with the expected top fix.
// --------------------------------------------------------------------------
void criterion_suggest(std::vector<std::string>& failures) {
    std::string dotfile;
    for (int i = 0; i < 9; ++i)
        dotfile += "alias agi" + std::to_string(i) + "='sudo apt-get install'\n";
    dotfile += "alias agn='apt-get install'\n";
    for (int i = 0; i < 6; ++i)
        dotfile += "alias sds" + std::to_string(i) + "='systemctl status docker'\n";
    for (int i = 0; i < 3; ++i)
        dotfile += "alias brewup" + std::to_string(i) + "='brew update && brew upgrade'\n";

    CorpusStore store;
    store.ingest_file(".bashrc", dotfile);
    label_store(store);
    RuleSet rules = build_rules(store);

    struct Scenario {
        const char* input;
        const char* fix;
    };
    for (const Scenario& s : {Scenario{"apt-get install vim", "sudo apt-get install vim"},
                              Scenario{"systemctl docker status", "systemctl status docker"},
                              Scenario{"brew upgrade", "brew update && brew upgrade"}}) {
        auto got = suggest(s.input, rules);
        if (got.empty() || got[0].replacement != s.fix)
            failures.push_back(std::string("scenario '") + s.input + "' top fix is " +
                               (got.empty() ? "<none>" : got[0].replacement) +
                               ", expected " + s.fix);
    }
}

// --------------------------------------------------------------------------
// 8. Harvest simulation: 10,000 files, one dense band over threshold,
//    refine to fixpoint, execute; coverage >= 0.94, per-range <= 2000,
//    rolling rate window respected on the simulated clock.
// --------------------------------------------------------------------------
void criterion_harvest(std::vector<std::string>& failures) {
    SimulationConfig config;
    config.seed = 1234;
    config.population = 10000;
    config.max_size = 29000;
    config.lognormal_mean = 6.5;
    config.lognormal_sigma = 1.0;
    config.spike_lo = 901;
    config.spike_hi = 1000;
    config.spike_count = 2600;
    SimulatedBackend backend(config);

    HarvestPlan initial = plan("alias", config.max_size, 100);
    std::int64_t over = 0;
    for (const auto& r : initial.ranges)
        if (backend.count_in_range(r.lo, r.hi) > 2000)
            ++over;
    expect(failures, over >= 1, "no initial range over threshold; simulation misconfigured");

    SimulatedClock clock;
    RateLimiter limiter(clock, 30);
    ExecuteOptions options;
    options.clock = &clock;
    options.limiter = &limiter;

    HarvestPlan refined = refine_to_fixpoint(initial, backend, options);
    HarvestOutcome outcome = execute(refined, backend, options);

    expect(failures, outcome.report.coverage >= 0.94,
           "coverage " + std::to_string(outcome.report.coverage) + " < 0.94");
    for (const auto& range : outcome.report.ranges)
        if (range.retrieved > 2000)
            failures.push_back("range retrieved " + std::to_string(range.retrieved) +
                               " > 2000");

    const auto& log = limiter.dispatch_log();
    expect(failures, !log.empty(), "empty request log");
    for (std::size_t i = 0; i + 30 < log.size(); ++i)
        if (log[i + 30] - log[i] < 60.0 - 1e-9) {
            failures.push_back("rate window violated at request " + std::to_string(i));
            break;
        }

    std::set<std::string> identities;
    for (const auto& f : outcome.records)
        identities.insert(f.repo_full_name + "\t" + f.path);
    expect(failures, identities.size() == outcome.records.size(),
           "duplicate file identities in harvested output");
}

// --------------------------------------------------------------------------
// 9. Corpus round trip: export -> fresh import reproduces identical tables
//    (hash-compared); re-ingesting the same files drops 100% as duplicates.
// --------------------------------------------------------------------------
void criterion_round_trip(std::vector<std::string>& failures) {
    CorpusStore store;
    std::int64_t repo = store.add_repo("user/dotfiles", "my dotfiles", 2);
    store.ingest_file("dots/.bashrc", fixtures::corpus_as_dotfile(), repo);
    store.ingest_file("dots/.zshrc", "alias v='vim'\nalias weird='echo \"a,b\" $(x|y)'\n");
    label_store(store);

    CorpusStore copy;
    bool identical = true;
    for (ExportKind kind : {ExportKind::Repos, ExportKind::Files, ExportKind::Aliases,
                            ExportKind::Commands, ExportKind::Arguments, ExportKind::Labels})
        import_table(copy, export_jsonl(store, kind), std::string(export_kind_name(kind)));
    for (ExportKind kind : {ExportKind::Repos, ExportKind::Files, ExportKind::Aliases,
                            ExportKind::Commands, ExportKind::Arguments, ExportKind::Labels}) {
        if (sha256_hex(export_jsonl(copy, kind)) != sha256_hex(export_jsonl(store, kind))) {
            identical = false;
            failures.push_back("table differs after round trip: " +
                               std::string(export_kind_name(kind)));
        }
    }
    expect(failures, identical, "round trip not lossless");
    std::string problem;
    expect(failures, copy.check_integrity(&problem), "integrity after import: " + problem);

    IngestReport again = store.ingest_file("elsewhere/.bashrc", fixtures::corpus_as_dotfile());
    expect(failures, again.duplicates_dropped == 1 && again.aliases_parsed == 0,
           "second ingest of identical content was not dropped");
}

// --------------------------------------------------------------------------
// 10. Scale smoke: parse + classify 100,000 aliases under the time and
//     memory bounds.
// --------------------------------------------------------------------------
void criterion_scale(std::vector<std::string>& failures) {
    testgen::StatementGen gen(555);
    std::vector<SourceFile> files(2500);
    for (std::size_t f = 0; f < files.size(); ++f) {
        files[f].file_id = "scale/" + std::to_string(f);
        std::string text;
        for (int line = 0; line < 25; ++line)
            text += gen.next().text + "\n";
        files[f].contents = std::move(text);
    }

    ParseBatchResult parsed = parse_batch_parallel(files);
    std::vector<AliasDefinition> aliases;
    for (auto& f : parsed.per_file)
        for (auto& def : f.aliases)
            aliases.push_back(std::move(def));
    expect(failures, aliases.size() >= 100000,
           "only " + std::to_string(aliases.size()) + " aliases generated");

    KnowledgeBase kb = default_knowledge_base();
    auto labels = classify_batch_parallel(aliases, kb);
    expect(failures, labels.size() == aliases.size(), "label count mismatch");

    struct rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    double peak_gb = static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);
    expect(failures, peak_gb < 1.0,
           "peak memory " + std::to_string(peak_gb) + " GB exceeds 1 GB");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "golden pipeline decomposition, byte-exact JSONL", 1.0, criterion_golden},
        {2, "parser properties on 10,000 generated statements", 30.0,
         criterion_parser_properties},
        {3, "edit distance vs exhaustive oracle (14,641 pairs)", 10.0, criterion_edit_oracle},
        {4, "labeled fixture corpus, zero disagreements", 1.0, criterion_labeled_corpus},
        {5, "compression ratio and histogram median", 5.0, criterion_compression},
        {6, "analytics determinism and percent bounds", 10.0, criterion_determinism},
        {7, "repair suggestion scenarios", 1.0, criterion_suggest},
        {8, "harvest simulation coverage and rate limit", 60.0, criterion_harvest},
        {9, "corpus export/import round trip and dedup", 5.0, criterion_round_trip},
        {10, "scale smoke: 100k aliases parsed and classified", 60.0, criterion_scale},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        std::vector<std::string> failures;
        double elapsed = run_seconds([&] { criterion.body(failures); });
        if (elapsed > criterion.time_limit_s)
            failures.push_back("took " + std::to_string(elapsed) + "s, limit " +
                               std::to_string(criterion.time_limit_s) + "s");
        if (failures.empty()) {
            std::printf("PASS criterion %2d (%.2fs): %s\n", criterion.number, elapsed,
                        criterion.name.c_str());
        } else {
            ++failed;
            std::printf("FAIL criterion %2d (%.2fs): %s\n", criterion.number, elapsed,
                        criterion.name.c_str());
            for (const auto& why : failures)
                std::printf("      - %s\n", why.c_str());
        }
    }
    if (failed)
        std::printf("%d criterion(s) failed\n", failed);
    else
        std::printf("all %zu criteria passed\n", criteria.size());
    return failed == 0 ? 0 : 1;
}
