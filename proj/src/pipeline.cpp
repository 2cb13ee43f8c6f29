#include "aliasmine/pipeline.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace aliasmine {

int worker_thread_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

ParseBatchResult parse_batch_serial(const std::vector<SourceFile>& files) {
    ParseBatchResult result;
    result.per_file.resize(files.size());
    for (std::size_t i = 0; i < files.size(); ++i)
        result.per_file[i] = parse_source(files[i].contents, files[i].file_id);
    for (const auto& parsed : result.per_file)
        result.tally += parsed.tally;
    return result;
}

ParseBatchResult parse_batch_parallel(const std::vector<SourceFile>& files) {
    ParseBatchResult result;
    result.per_file.resize(files.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < files.size(); ++i)
        result.per_file[i] = parse_source(files[i].contents, files[i].file_id);
    for (const auto& parsed : result.per_file)
        result.tally += parsed.tally;
    return result;
}

std::vector<std::vector<PracticeLabel>> classify_batch_serial(
    const std::vector<AliasDefinition>& aliases, const KnowledgeBase& kb) {
    std::vector<std::vector<PracticeLabel>> labels(aliases.size());
    for (std::size_t i = 0; i < aliases.size(); ++i)
        labels[i] = classify(aliases[i], kb);
    return labels;
}

std::vector<std::vector<PracticeLabel>> classify_batch_parallel(
    const std::vector<AliasDefinition>& aliases, const KnowledgeBase& kb) {
    std::vector<std::vector<PracticeLabel>> labels(aliases.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t i = 0; i < aliases.size(); ++i)
        labels[i] = classify(aliases[i], kb);
    return labels;
}

}  // namespace aliasmine
