// Compares the serial reference kernels against the OpenMP ones on a
// synthetic corpus and reports throughput.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "aliasmine/pipeline.hpp"

namespace {

using namespace aliasmine;

std::vector<SourceFile> synthetic_corpus(std::size_t n_files, std::size_t aliases_per_file,
                                         std::uint64_t seed) {
    static const char* kNames[] = {"gs", "gd", "ll", "la", "update", "dl", "more", "grep"};
    static const char* kValues[] = {
        "git status",
        "git diff",
        "ls -alF",
        "ls -A --color=auto",
        "sudo apt-get update && sudo apt-get upgrade",
        "cd ~/Downloads",
        "less",
        "grep --color=auto",
        "du -cksh * | sort -hr | head -n 15",
        "TERM=xterm256color ssh",
    };
    std::mt19937_64 rng(seed);
    std::vector<SourceFile> files(n_files);
    for (std::size_t f = 0; f < n_files; ++f) {
        files[f].file_id = "bench/" + std::to_string(f) + "/.bashrc";
        std::string text;
        for (std::size_t a = 0; a < aliases_per_file; ++a) {
            text += "alias ";
            text += kNames[rng() % std::size(kNames)];
            text += std::to_string(rng() % 100);
            text += "='";
            text += kValues[rng() % std::size(kValues)];
            text += "'\n";
        }
        files[f].contents = std::move(text);
    }
    return files;
}

// Best of three runs, so first-touch page faults and allocator warmup do
// not penalize whichever variant goes first.
template <typename F>
double best_of(F&& fn, int runs = 3) {
    double best = 1e30;
    for (int i = 0; i < runs; ++i) {
        auto start = std::chrono::steady_clock::now();
        fn();
        double t =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        best = std::min(best, t);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_files = argc > 1 ? std::stoul(argv[1]) : 2000;
    std::size_t per_file = argc > 2 ? std::stoul(argv[2]) : 50;

    auto files = synthetic_corpus(n_files, per_file, 7);
    KnowledgeBase kb = default_knowledge_base();

    std::printf("corpus: %zu files x %zu aliases, %d worker thread(s)\n", n_files, per_file,
                worker_thread_count());

    // Correctness pass first; results are dropped before timing so the
    // timed runs see the same allocator state.
    bool parse_match = true;
    std::vector<AliasDefinition> aliases;
    {
        ParseBatchResult serial = parse_batch_serial(files);
        ParseBatchResult parallel = parse_batch_parallel(files);
        for (std::size_t i = 0; i < serial.per_file.size(); ++i)
            if (serial.per_file[i].aliases != parallel.per_file[i].aliases)
                parse_match = false;
        for (auto& parsed : serial.per_file)
            for (auto& def : parsed.aliases)
                aliases.push_back(std::move(def));
    }
    bool classify_match = classify_batch_serial(aliases, kb) ==
                          classify_batch_parallel(aliases, kb);

    double parse_serial = best_of([&] { parse_batch_serial(files); });
    double parse_parallel = best_of([&] { parse_batch_parallel(files); });
    double classify_serial = best_of([&] { classify_batch_serial(aliases, kb); });
    double classify_parallel = best_of([&] { classify_batch_parallel(aliases, kb); });

    const double n_aliases = static_cast<double>(aliases.size());
    std::printf("parse    serial %8.3fs (%10.0f aliases/s)  parallel %8.3fs (%10.0f aliases/s)  "
                "speedup %.2fx  match=%s\n",
                parse_serial, n_aliases / parse_serial, parse_parallel,
                n_aliases / parse_parallel, parse_serial / parse_parallel,
                parse_match ? "yes" : "NO");
    std::printf("classify serial %8.3fs (%10.0f aliases/s)  parallel %8.3fs (%10.0f aliases/s)  "
                "speedup %.2fx  match=%s\n",
                classify_serial, n_aliases / classify_serial, classify_parallel,
                n_aliases / classify_parallel, classify_serial / classify_parallel,
                classify_match ? "yes" : "NO");
    return parse_match && classify_match ? 0 : 1;
}
