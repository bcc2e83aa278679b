#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spast/instance.hpp"

namespace spast {

/// Order in which available students are processed. Fifo seeds the queue
/// s1..s_n1; Shuffled permutes that initial order. Either way a dequeued
/// student keeps applying until assigned or inactive, and displaced
/// students rejoin at the tail.
struct SchedulePolicy {
    enum class Kind { Fifo, Shuffled };
    Kind kind = Kind::Fifo;
    uint64_t seed = 0;

    /// Accepts "fifo" or "shuffled:<seed>".
    static SchedulePolicy parse(const std::string& text);
    std::string str() const;
};

struct TraceEvent {
    int step = 0;
    std::string action;
    std::vector<int> assigned; // snapshot after the event
};

struct ApproxStats {
    int max_pair_applications = 0; // never exceeds 3 in the main loop
    long steps = 0;
    int promotions = 0;
};

/// The 3/2-approximation algorithm for maximum stable matching: phased
/// student applications with precarious-pair displacement, followed by a
/// within-lecturer promotion pass. Output is stable and at least 2/3 of
/// the maximum stable matching size. Deterministic given the policy.
Matching approx_match(const Instance& inst,
                      const SchedulePolicy& policy = {},
                      ApproxStats* stats = nullptr,
                      std::vector<TraceEvent>* trace = nullptr);

/// Renders "step <n> | <action> | <assignment columns>" lines.
std::string format_trace(const std::vector<TraceEvent>& trace);

} // namespace spast
