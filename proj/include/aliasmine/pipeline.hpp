#pragma once

#include <string>
#include <vector>

#include "aliasmine/classifier.hpp"
#include "aliasmine/knowledge_base.hpp"
#include "aliasmine/parser.hpp"

namespace aliasmine {

// Bulk parse/classify kernels. Each kernel comes in a serial reference
// version and an OpenMP version producing identical output (results land in
// per-index slots, so thread scheduling never changes the outcome). The
// serial versions stay as the correctness baseline for tests and the
// benchmark tool.

struct SourceFile {
    std::string file_id;
    std::string contents;
};

struct ParseBatchResult {
    std::vector<ParseSourceResult> per_file;
    SkipTally tally;
};

ParseBatchResult parse_batch_serial(const std::vector<SourceFile>& files);
ParseBatchResult parse_batch_parallel(const std::vector<SourceFile>& files);

std::vector<std::vector<PracticeLabel>> classify_batch_serial(
    const std::vector<AliasDefinition>& aliases, const KnowledgeBase& kb);
std::vector<std::vector<PracticeLabel>> classify_batch_parallel(
    const std::vector<AliasDefinition>& aliases, const KnowledgeBase& kb);

int worker_thread_count();

}  // namespace aliasmine
