#include <doctest.h>

#include "aliasmine/pipeline.hpp"
#include "support/statement_gen.hpp"

using namespace aliasmine;

namespace {

std::vector<SourceFile> random_corpus(std::size_t n_files, std::uint64_t seed) {
    testgen::StatementGen gen(seed);
    std::vector<SourceFile> files(n_files);
    for (std::size_t f = 0; f < n_files; ++f) {
        files[f].file_id = "gen/" + std::to_string(f);
        std::string text;
        for (int line = 0; line < 20; ++line) {
            text += gen.next().text;
            text += '\n';
        }
        files[f].contents = std::move(text);
    }
    return files;
}

}  // namespace

TEST_CASE("parallel parse kernel matches the serial reference exactly") {
    auto files = random_corpus(60, 17);
    ParseBatchResult serial = parse_batch_serial(files);
    ParseBatchResult parallel = parse_batch_parallel(files);

    REQUIRE(serial.per_file.size() == parallel.per_file.size());
    for (std::size_t i = 0; i < serial.per_file.size(); ++i) {
        CHECK(serial.per_file[i].aliases == parallel.per_file[i].aliases);
        CHECK(serial.per_file[i].tally == parallel.per_file[i].tally);
    }
    CHECK(serial.tally == parallel.tally);
}

TEST_CASE("parallel classify kernel matches the serial reference exactly") {
    auto files = random_corpus(40, 23);
    ParseBatchResult parsed = parse_batch_serial(files);
    std::vector<AliasDefinition> aliases;
    for (auto& f : parsed.per_file)
        for (auto& def : f.aliases)
            aliases.push_back(std::move(def));

    KnowledgeBase kb = default_knowledge_base();
    auto serial = classify_batch_serial(aliases, kb);
    auto parallel = classify_batch_parallel(aliases, kb);
    CHECK(serial == parallel);
}

TEST_CASE("kernels handle empty batches") {
    CHECK(parse_batch_serial({}).per_file.empty());
    CHECK(parse_batch_parallel({}).per_file.empty());
    KnowledgeBase kb = default_knowledge_base();
    CHECK(classify_batch_serial({}, kb).empty());
    CHECK(classify_batch_parallel({}, kb).empty());
    CHECK(worker_thread_count() >= 1);
}
