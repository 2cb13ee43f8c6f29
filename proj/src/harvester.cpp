#include "aliasmine/harvester.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <thread>
#include <unordered_set>

namespace aliasmine {

// ---------------------------------------------------------------------------
// Clocks and rate limiting
// ---------------------------------------------------------------------------

namespace {

double steady_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

SystemClock::SystemClock() : start_(steady_seconds()) {}

double SystemClock::now() const {
    return steady_seconds() - start_;
}

void SystemClock::sleep_until(double when) {
    double delta = when - now();
    if (delta > 0)
        std::this_thread::sleep_for(std::chrono::duration<double>(delta));
}

void RateLimiter::acquire() {
    if (per_minute_ > 0 && log_.size() >= static_cast<std::size_t>(per_minute_)) {
        // The request that must fall out of the rolling window before we may
        // dispatch again.
        double oldest = log_[log_.size() - static_cast<std::size_t>(per_minute_)];
        double earliest = oldest + 60.0;
        if (clock_.now() < earliest)
            clock_.sleep_until(earliest);
    }
    log_.push_back(clock_.now());
}

// ---------------------------------------------------------------------------
// Planning
// ---------------------------------------------------------------------------

std::string build_query(const std::string& term, std::int64_t size_lo, std::int64_t size_hi) {
    return term + " language:Shell size:" + std::to_string(size_lo) + ".." +
           std::to_string(size_hi);
}

HarvestPlan plan(const std::string& term, std::int64_t max_size, std::int64_t initial_step) {
    HarvestPlan p;
    p.term = term;
    p.max_size = max_size;
    if (initial_step < 1)
        initial_step = 1;
    for (std::int64_t lo = 1; lo <= max_size; lo += initial_step)
        p.ranges.push_back({lo, std::min(lo + initial_step - 1, max_size), false});
    return p;
}

HarvestPlan refine(const HarvestPlan& plan, const std::vector<std::int64_t>& counts,
                   std::int64_t threshold) {
    HarvestPlan out;
    out.term = plan.term;
    out.cap_per_order = plan.cap_per_order;
    out.max_size = plan.max_size;
    for (std::size_t i = 0; i < plan.ranges.size(); ++i) {
        const ByteRange& r = plan.ranges[i];
        std::int64_t count = i < counts.size() ? counts[i] : -1;
        if (count <= threshold || count < 0) {
            out.ranges.push_back(r);
            continue;
        }
        if (r.lo == r.hi) {
            ByteRange kept = r;
            kept.unsamplable = true;
            out.ranges.push_back(kept);
            continue;
        }
        std::int64_t mid = r.lo + (r.hi - r.lo) / 2;
        out.ranges.push_back({r.lo, mid, false});
        out.ranges.push_back({mid + 1, r.hi, false});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

namespace {

// Runs one search request with bounded retries; transient failures back off
// exponentially (1s, 2s, 4s ... on the injected clock).
bool search_with_retry(SearchBackend& backend, RateLimiter& limiter, Clock& clock,
                       const std::string& term, const ByteRange& range, SortOrder order,
                       int page, int max_retries, SearchPage& out) {
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        limiter.acquire();
        try {
            out = backend.search(term, range.lo, range.hi, order, page);
            return true;
        } catch (const BackendError& err) {
            if (!err.transient || attempt == max_retries)
                return false;
            clock.sleep_until(clock.now() + std::ldexp(1.0, attempt));
        }
    }
    return false;
}

std::string identity_key(const HarvestedFile& file) {
    return file.repo_full_name + '\0' + file.path;
}

}  // namespace

std::vector<std::int64_t> probe_counts(const HarvestPlan& plan, SearchBackend& backend,
                                       RateLimiter& limiter, int max_retries) {
    std::vector<std::int64_t> counts;
    counts.reserve(plan.ranges.size());
    for (const ByteRange& range : plan.ranges) {
        SearchPage page;
        if (search_with_retry(backend, limiter, limiter.clock(), plan.term, range,
                              SortOrder::Newest, 1, max_retries, page))
            counts.push_back(page.total_count);
        else
            counts.push_back(-1);
    }
    return counts;
}

HarvestPlan refine_to_fixpoint(const HarvestPlan& initial, SearchBackend& backend,
                               const ExecuteOptions& options) {
    SystemClock system_clock;
    Clock& clock = options.clock ? *options.clock : static_cast<Clock&>(system_clock);
    RateLimiter own_limiter(clock, options.rate_limit_per_min);
    RateLimiter& limiter = options.limiter ? *options.limiter : own_limiter;

    HarvestPlan current = initial;
    const std::int64_t threshold = 2 * current.cap_per_order;
    // A 29 KB span halves to one-byte ranges within 15 steps; the guard only
    // protects against a backend whose counts keep changing.
    for (int iteration = 0; iteration < 40; ++iteration) {
        std::vector<std::int64_t> counts =
            probe_counts(current, backend, limiter, options.max_retries);
        HarvestPlan next = refine(current, counts, threshold);
        if (next.ranges == current.ranges)
            return next;
        current = std::move(next);
    }
    return current;
}

HarvestOutcome execute(const HarvestPlan& plan, SearchBackend& backend,
                       const ExecuteOptions& options) {
    SystemClock system_clock;
    Clock& clock = options.clock ? *options.clock : static_cast<Clock&>(system_clock);
    RateLimiter own_limiter(clock, options.rate_limit_per_min);
    RateLimiter& limiter = options.limiter ? *options.limiter : own_limiter;

    HarvestOutcome outcome;
    std::unordered_set<std::string> seen;
    const int page_size = backend.page_size();
    const int cap = std::min(plan.cap_per_order, backend.cap_per_order());

    for (const ByteRange& range : plan.ranges) {
        RangeReport report;
        report.range = range;

        bool have_count = false;
        for (SortOrder order : {SortOrder::Newest, SortOrder::Oldest}) {
            SearchPage first_page;
            if (!search_with_retry(backend, limiter, limiter.clock(), plan.term, range, order, 1,
                                   options.max_retries, first_page)) {
                report.failed = true;
                continue;
            }
            if (!have_count) {
                report.total_count = first_page.total_count;
                have_count = true;
            }

            std::int64_t want = std::min<std::int64_t>(first_page.total_count, cap);
            int pages = static_cast<int>((want + page_size - 1) / page_size);
            for (int page_no = 1; page_no <= std::max(pages, 1); ++page_no) {
                SearchPage page;
                if (page_no == 1) {
                    page = std::move(first_page);
                } else if (!search_with_retry(backend, limiter, limiter.clock(), plan.term, range,
                                              order, page_no, options.max_retries, page)) {
                    report.failed = true;
                    break;
                }
                for (HarvestedFile& file : page.items) {
                    if (seen.insert(identity_key(file)).second) {
                        ++report.retrieved;
                        outcome.records.push_back(std::move(file));
                    }
                }
            }
        }
        if (have_count)
            outcome.report.estimated_population +=
                static_cast<std::uint64_t>(report.total_count);
        outcome.report.ranges.push_back(std::move(report));
    }

    outcome.report.retrieved = outcome.records.size();
    if (outcome.report.estimated_population > 0) {
        double ratio = static_cast<double>(outcome.report.retrieved) /
                       static_cast<double>(outcome.report.estimated_population);
        outcome.report.coverage = std::min(1.0, ratio);
        if (outcome.report.retrieved > outcome.report.estimated_population)
            outcome.report.over_count =
                outcome.report.retrieved - outcome.report.estimated_population;
    }
    outcome.report.request_log = limiter.dispatch_log();
    return outcome;
}

// ---------------------------------------------------------------------------
// Simulated backend
// ---------------------------------------------------------------------------

SimulatedBackend::SimulatedBackend(const SimulationConfig& config) {
    std::mt19937_64 rng(config.seed);
    std::int64_t base = config.population - config.spike_count;
    if (base < 0)
        base = 0;

    files_.reserve(static_cast<std::size_t>(config.population));
    std::int64_t index = 0;
    for (std::int64_t i = 0; i < base; ++i) {
        // Box-Muller keeps the draw sequence pinned to the seed across
        // platforms (std::lognormal_distribution is implementation-defined).
        double u1 = std::ldexp(static_cast<double>(rng() >> 11), -53);
        double u2 = std::ldexp(static_cast<double>(rng() >> 11), -53);
        u1 = std::max(u1, 1e-12);
        double normal =
            std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
        double size = std::exp(config.lognormal_mean + config.lognormal_sigma * normal);
        std::int64_t bytes =
            std::clamp<std::int64_t>(static_cast<std::int64_t>(std::llround(size)), 1,
                                     config.max_size);
        files_.push_back({index++, bytes});
    }
    for (std::int64_t i = 0; i < config.spike_count; ++i) {
        std::int64_t span = std::max<std::int64_t>(1, config.spike_hi - config.spike_lo + 1);
        std::int64_t bytes = config.spike_lo + static_cast<std::int64_t>(rng() % span);
        files_.push_back({index++, std::clamp<std::int64_t>(bytes, 1, config.max_size)});
    }

    std::sort(files_.begin(), files_.end(), [](const SimFile& a, const SimFile& b) {
        if (a.size != b.size)
            return a.size < b.size;
        return a.index < b.index;
    });
    fail_remaining_ = config.fail_first_requests;
}

std::int64_t SimulatedBackend::count_in_range(std::int64_t lo, std::int64_t hi) const {
    auto first = std::lower_bound(files_.begin(), files_.end(), lo,
                                  [](const SimFile& f, std::int64_t v) { return f.size < v; });
    auto last = std::upper_bound(files_.begin(), files_.end(), hi,
                                 [](std::int64_t v, const SimFile& f) { return v < f.size; });
    return last - first;
}

SearchPage SimulatedBackend::search(const std::string& term, std::int64_t size_lo,
                                    std::int64_t size_hi, SortOrder order, int page) {
    (void)term;
    ++requests_;
    if (fail_remaining_ > 0) {
        --fail_remaining_;
        throw BackendError{"simulated transient failure", true};
    }
    if (page < 1 || page > cap_per_order() / page_size())
        throw BackendError{"page beyond result cap", false};

    auto first = std::lower_bound(files_.begin(), files_.end(), size_lo,
                                  [](const SimFile& f, std::int64_t v) { return f.size < v; });
    auto last = std::upper_bound(files_.begin(), files_.end(), size_hi,
                                 [](std::int64_t v, const SimFile& f) { return v < f.size; });

    std::vector<const SimFile*> in_range;
    in_range.reserve(static_cast<std::size_t>(last - first));
    for (auto it = first; it != last; ++it)
        in_range.push_back(&*it);
    std::stable_sort(in_range.begin(), in_range.end(),
                     [order](const SimFile* a, const SimFile* b) {
                         return order == SortOrder::Newest ? a->index > b->index
                                                           : a->index < b->index;
                     });

    SearchPage result;
    result.total_count = static_cast<std::int64_t>(in_range.size());
    std::size_t begin = static_cast<std::size_t>(page - 1) *
                        static_cast<std::size_t>(page_size());
    for (std::size_t i = begin;
         i < in_range.size() && i < begin + static_cast<std::size_t>(page_size()); ++i) {
        const SimFile* f = in_range[i];
        HarvestedFile file;
        file.repo_full_name = "sim/repo-" + std::to_string(f->index % 97);
        file.path = "files/f" + std::to_string(f->index) + ".sh";
        file.size = f->size;
        file.contents = "alias a" + std::to_string(f->index) + "='echo " +
                        std::to_string(f->size) + "'\n";
        result.items.push_back(std::move(file));
    }
    return result;
}

}  // namespace aliasmine
