#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spast/generator.hpp"
#include "spast/instance.hpp"

namespace spast {

struct InstanceResult {
    int id = 0;
    std::optional<int> approx_size, min_size, max_size;
    double time_a_ms = 0, time_min_ms = 0, time_max_ms = 0;
    // end-to-end including model build, alongside the solve body above
    double total_min_ms = 0, total_max_ms = 0;
};

struct CaseStats {
    std::string label;
    int count = 0;
    int done_a = 0, done_min = 0, done_max = 0;
    double min_a_over_max = 0;
    double pct_a_eq_max = 0, pct_a_ge_098max = 0;
    double avg_a = 0, avg_min = 0, avg_max = 0;
    double avg_a_over_max = 0, avg_min_over_max = 0;
    double avg_time_a_ms = 0, avg_time_min_ms = 0, avg_time_max_ms = 0;
};

struct RunOptions {
    std::string label;
    int count = 10;
    std::uint64_t seed = 0;
    double timeout_seconds = 1800.0;
    int threads = 1;
    // directory for LP files when the exact stage is out of internal
    // reach; empty = skip emission
    std::string lp_dir;
};

/// Generates `count` instances from params (per-instance seed = seed XOR
/// index), runs the approximation plus exact max/min where in reach
/// (n1 <= 12: enumeration oracle; <= 600 binaries: internal IP solver;
/// otherwise N/A), and aggregates. Per-instance timeouts are recorded in
/// the done_* counters, never fatal.
CaseStats run_case(const GenParams& params, const RunOptions& opts,
                   std::vector<InstanceResult>* per_instance = nullptr);

/// Statistics for a fixed set of instances (used for injected cases).
CaseStats summarize(const std::string& label,
                    const std::vector<InstanceResult>& results);

std::string csv_header();
std::string csv_row(const CaseStats& s);
std::string per_instance_csv(const std::vector<InstanceResult>& results);

struct SweepReport {
    int instances = 0;
    int exact_checked = 0;
    std::vector<std::string> violations; // serialized offending instances
};

/// Correctness sweep: every approximation output must be a valid stable
/// matching; where the oracle is in reach, size(A) >= 2/3 * max.
SweepReport correctness_sweep(const GenParams& params, int count,
                              std::uint64_t seed);

} // namespace spast
