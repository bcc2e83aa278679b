#pragma once

#include <string>
#include <vector>

#include "spast/instance.hpp"

namespace spast {

enum class Sense { Maximize, Minimize };

// One linear row: sum(coef * var) <sense> rhs, sense 'L' (<=) or 'G' (>=).
struct LinRow {
    std::string name;
    std::vector<std::pair<int, long>> terms; // (variable index, coefficient)
    char sense = 'L';
    long rhs = 0;
};

/// Binary IP for maximum/minimum stable matching. Variables exist only
/// for acceptable (student, project) pairs: one assignment variable x and
/// two stability witnesses a (lecturer-side) and b (project-side) per
/// pair. Rows: per-student assignment, project and lecturer capacities,
/// and three stability rows per pair.
struct IpModel {
    Instance inst;
    Sense sense = Sense::Maximize;
    std::vector<std::pair<int, int>> pairs; // acceptable (i, j), student asc,
                                            // pref order within student
    // variable index layout: x = pair index p, a = n_pairs + p,
    // b = 2*n_pairs + p
    std::vector<LinRow> rows;

    int n_pairs() const { return static_cast<int>(pairs.size()); }
    int n_vars() const { return 3 * n_pairs(); }
    int x_var(int p) const { return p; }
    int a_var(int p) const { return n_pairs() + p; }
    int b_var(int p) const { return 2 * n_pairs() + p; }
    std::string var_name(int v) const;
};

IpModel build_model(const Instance& inst, Sense sense);

struct FeasibilityReport {
    bool feasible = true;
    std::vector<std::string> violated_rows;
};

/// Sets x from the matching, derives the a/b witnesses (a_ij = 1 iff s_i
/// is not assigned to l_k, l_k is full, and its worst assignee is ranked
/// no worse than s_i; b_ij analogous for p_j), then evaluates every row.
FeasibilityReport check_feasible(const IpModel& model, const Matching& m);

/// Deterministic LP-format text: Maximize/Minimize, Subject To, Binary,
/// End. Byte-identical across runs for the same instance.
std::string emit_lp(const IpModel& model);

struct IpBudget {
    int max_binaries = 600;
    long node_limit = 500'000'000;
    double wall_seconds = 1800.0;
};

struct IpSolveResult {
    bool optimal = false; // false: budget exhausted, best is the incumbent
    Matching matching;
    int objective = 0;
    long nodes = 0;
};

/// Exact optimum by depth-first branch and bound over the assignment
/// variables, with stability-constraint propagation and a remaining-
/// capacity bound. No LP relaxation.
IpSolveResult solve(const IpModel& model, const IpBudget& budget = {});

} // namespace spast
