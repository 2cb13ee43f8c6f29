#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace aliasmine {

// ---------------------------------------------------------------------------
// Clock + rate limiter. Tests drive a simulated clock; the real one sleeps.
// ---------------------------------------------------------------------------

class Clock {
public:
    virtual ~Clock() = default;
    virtual double now() const = 0;          // seconds
    virtual void sleep_until(double when) = 0;
};

class SystemClock final : public Clock {
public:
    SystemClock();
    double now() const override;
    void sleep_until(double when) override;

private:
    double start_;
};

class SimulatedClock final : public Clock {
public:
    double now() const override { return now_; }
    void sleep_until(double when) override {
        if (when > now_)
            now_ = when;
    }

private:
    double now_ = 0.0;
};

// Global dispatch gate: at most `per_minute` acquisitions in any half-open
// rolling 60-second window. Keeps the full dispatch log for auditing.
class RateLimiter {
public:
    RateLimiter(Clock& clock, int per_minute) : clock_(clock), per_minute_(per_minute) {}

    void acquire();
    const std::vector<double>& dispatch_log() const { return log_; }
    Clock& clock() { return clock_; }

private:
    Clock& clock_;
    int per_minute_;
    std::vector<double> log_;
};

// ---------------------------------------------------------------------------
// Search backend
// ---------------------------------------------------------------------------

struct HarvestedFile {
    std::string repo_full_name;
    std::string path;
    std::int64_t size = 0;
    std::string contents;
};

struct SearchPage {
    std::int64_t total_count = 0;  // authoritative on narrow ranges
    std::vector<HarvestedFile> items;
};

enum class SortOrder { Newest, Oldest };

struct BackendError {
    std::string message;
    bool transient = false;
};

class SearchBackend {
public:
    virtual ~SearchBackend() = default;

    // One page of results for files matching `term` with size in
    // [size_lo, size_hi]. Pages are 1-based; pages beyond
    // cap_per_order/page_size throw BackendError{transient=false}.
    virtual SearchPage search(const std::string& term, std::int64_t size_lo,
                              std::int64_t size_hi, SortOrder order, int page) = 0;

    virtual int page_size() const { return 100; }
    virtual int cap_per_order() const { return 1000; }
};

// The exact query string sent to a code-search service.
std::string build_query(const std::string& term, std::int64_t size_lo, std::int64_t size_hi);

// ---------------------------------------------------------------------------
// Plans and reports
// ---------------------------------------------------------------------------

struct ByteRange {
    std::int64_t lo = 1;
    std::int64_t hi = 1;
    bool unsamplable = false;  // over threshold but already one byte wide

    bool operator==(const ByteRange&) const = default;
};

struct HarvestPlan {
    std::string term;
    std::vector<ByteRange> ranges;  // disjoint, ascending, covering [1, max_size]
    int cap_per_order = 1000;
    std::int64_t max_size = 0;
};

struct RangeReport {
    ByteRange range;
    std::int64_t total_count = 0;
    std::int64_t retrieved = 0;  // distinct files first seen in this range
    bool failed = false;
};

struct HarvestReport {
    std::uint64_t retrieved = 0;
    std::uint64_t estimated_population = 0;
    double coverage = 0.0;  // clamped to [0, 1]
    std::uint64_t over_count = 0;
    std::vector<RangeReport> ranges;
    std::vector<double> request_log;  // dispatch timestamps, seconds
};

// Uniform ranges of `initial_step` bytes covering [1, max_size].
HarvestPlan plan(const std::string& term, std::int64_t max_size,
                 std::int64_t initial_step = 100);

// Splits every range whose count exceeds `threshold` in half; one-byte
// ranges over threshold are kept and flagged unsamplable. counts[i] < 0
// means unknown, range kept as is.
HarvestPlan refine(const HarvestPlan& plan, const std::vector<std::int64_t>& counts,
                   std::int64_t threshold);

struct ExecuteOptions {
    int rate_limit_per_min = 30;
    int max_retries = 3;
    Clock* clock = nullptr;        // defaults to a SystemClock
    RateLimiter* limiter = nullptr;  // shared across probe/refine/execute if given
};

// One count probe per range (page 1, newest).
std::vector<std::int64_t> probe_counts(const HarvestPlan& plan, SearchBackend& backend,
                                       RateLimiter& limiter, int max_retries = 3);

// probe + refine until the plan stops changing.
HarvestPlan refine_to_fixpoint(const HarvestPlan& plan, SearchBackend& backend,
                               const ExecuteOptions& options = {});

struct HarvestOutcome {
    std::vector<HarvestedFile> records;
    HarvestReport report;
};

// Queries both sort orders per range, unions by (repo, path), retries
// transient failures with exponential backoff, and never exceeds the
// rolling-window rate limit.
HarvestOutcome execute(const HarvestPlan& plan, SearchBackend& backend,
                       const ExecuteOptions& options = {});

// ---------------------------------------------------------------------------
// Simulated backend: a deterministic synthetic population.
// ---------------------------------------------------------------------------

struct SimulationConfig {
    std::uint64_t seed = 42;
    std::int64_t population = 10000;
    std::int64_t max_size = 29000;
    double lognormal_mean = 6.5;   // of the underlying normal
    double lognormal_sigma = 1.0;
    // Optional dense band: `spike_count` extra-weighted files placed
    // uniformly inside [spike_lo, spike_hi].
    std::int64_t spike_lo = 0;
    std::int64_t spike_hi = 0;
    std::int64_t spike_count = 0;
    // Fail the first N search requests transiently (retry testing).
    int fail_first_requests = 0;
};

class SimulatedBackend final : public SearchBackend {
public:
    explicit SimulatedBackend(const SimulationConfig& config);

    SearchPage search(const std::string& term, std::int64_t size_lo, std::int64_t size_hi,
                      SortOrder order, int page) override;

    std::int64_t population() const { return static_cast<std::int64_t>(files_.size()); }
    std::int64_t count_in_range(std::int64_t lo, std::int64_t hi) const;
    int requests_served() const { return requests_; }

private:
    struct SimFile {
        std::int64_t index;  // recency: higher = newer
        std::int64_t size;
    };
    std::vector<SimFile> files_;  // sorted by size, then index
    int requests_ = 0;
    int fail_remaining_ = 0;
};

// ---------------------------------------------------------------------------
// HTTP backend for a real code-search service (GitHub-style REST API).
// ---------------------------------------------------------------------------

struct HttpBackendConfig {
    std::string host = "api.github.com";
    std::string token;  // empty = unauthenticated
    bool fetch_contents = true;
};

std::unique_ptr<SearchBackend> make_http_backend(const HttpBackendConfig& config);

}  // namespace aliasmine
