#pragma once

#include <functional>
#include <optional>

#include "spast/instance.hpp"

namespace spast {

struct EnumerationBudget {
    int max_students = 12;
    long node_limit = 200'000'000;
    double wall_seconds = 600.0;
};

struct BudgetExceeded : std::runtime_error {
    long nodes_visited;
    BudgetExceeded(const std::string& what_, long nodes)
        : std::runtime_error(what_), nodes_visited(nodes) {}
};

/// Depth-first assignment of students to (acceptable project or none)
/// with capacity pruning; stability checked at leaves only, via the
/// stability module. Deliberately dumb so it stays an independent oracle.
/// The callback may return false to stop early.
void enumerate_stable(const Instance& inst, const EnumerationBudget& budget,
                      const std::function<bool(const Matching&)>& yield);

/// Largest / smallest stable matching over full enumeration. Ties broken
/// by lexicographically smallest assignment vector.
Matching max_stable(const Instance& inst, const EnumerationBudget& budget = {});
Matching min_stable(const Instance& inst, const EnumerationBudget& budget = {});

} // namespace spast
