#include "spast/exact.hpp"

#include <chrono>

#include "spast/stability.hpp"

namespace spast {

namespace {

using Clock = std::chrono::steady_clock;

struct Enumerator {
    const Instance& inst;
    const EnumerationBudget& budget;
    const std::function<bool(const Matching&)>& yield;
    Matching m;
    std::vector<int> proj_load;
    std::vector<int> lect_load;
    long nodes = 0;
    bool stopped = false;
    Clock::time_point deadline;

    Enumerator(const Instance& inst_, const EnumerationBudget& budget_,
               const std::function<bool(const Matching&)>& yield_)
        : inst(inst_), budget(budget_), yield(yield_), m(inst_.n_students),
          proj_load(inst_.n_projects, 0), lect_load(inst_.n_lecturers, 0),
          deadline(Clock::now() +
                   std::chrono::duration_cast<Clock::duration>(
                       std::chrono::duration<double>(budget_.wall_seconds))) {}

    void dfs(int i) {
        if (stopped) return;
        if (++nodes > budget.node_limit)
            throw BudgetExceeded("enumeration node limit exceeded", nodes);
        if ((nodes & 0xFFF) == 0 && Clock::now() > deadline)
            throw BudgetExceeded("enumeration wall budget exceeded", nodes);
        if (i > inst.n_students) {
            if (is_stable(inst, m))
                if (!yield(m)) stopped = true;
            return;
        }
        for (int j : inst.student_prefs[i - 1].flat()) {
            int k = inst.lecturer_of(j);
            if (proj_load[j - 1] >= inst.project_capacity[j - 1]) continue;
            if (lect_load[k - 1] >= inst.lecturer_capacity[k - 1]) continue;
            m.assigned[i - 1] = j;
            ++proj_load[j - 1];
            ++lect_load[k - 1];
            dfs(i + 1);
            --proj_load[j - 1];
            --lect_load[k - 1];
            m.assigned[i - 1] = 0;
            if (stopped) return;
        }
        dfs(i + 1); // s_i left unassigned
    }
};

} // namespace

void enumerate_stable(const Instance& inst, const EnumerationBudget& budget,
                      const std::function<bool(const Matching&)>& yield) {
    if (inst.n_students > budget.max_students)
        throw std::invalid_argument(
            "instance exceeds enumeration budget (n1 > " +
            std::to_string(budget.max_students) + ")");
    Enumerator e(inst, budget, yield);
    e.dfs(1);
}

namespace {

Matching extremal_stable(const Instance& inst, const EnumerationBudget& budget,
                         bool maximize) {
    std::optional<Matching> best;
    enumerate_stable(inst, budget, [&](const Matching& m) {
        if (!best) {
            best = m;
        } else {
            int d = m.size() - best->size();
            if ((maximize && d > 0) || (!maximize && d < 0) ||
                (d == 0 && m.assigned < best->assigned))
                best = m;
        }
        return true;
    });
    if (!best)
        throw std::runtime_error("no stable matching found (internal error)");
    return *best;
}

} // namespace

Matching max_stable(const Instance& inst, const EnumerationBudget& budget) {
    return extremal_stable(inst, budget, true);
}

Matching min_stable(const Instance& inst, const EnumerationBudget& budget) {
    return extremal_stable(inst, budget, false);
}

} // namespace spast
