#include "spast/stability.hpp"

#include <algorithm>

namespace spast {

const char* kind_name(BlockKind k) {
    switch (k) {
        case BlockKind::K3a: return "3a";
        case BlockKind::K3bi: return "3bi";
        case BlockKind::K3bii: return "3bii";
        case BlockKind::K3c: return "3c";
    }
    return "?";
}

namespace {

// Worst rank among a lecturer's assignees, either across all their
// projects or restricted to one project. Rank only; the phase-sensitive
// notion lives in the approximation engine.
int worst_rank_of_lecturer(const Instance& inst, const Matching& m, int k) {
    int worst = 0;
    for (int i = 1; i <= inst.n_students; ++i) {
        int j = m.of_student(i);
        if (j != 0 && inst.lecturer_of(j) == k)
            worst = std::max(worst, *inst.lecturer_prefs[k - 1].rank_of(i));
    }
    return worst;
}

int worst_rank_in_project(const Instance& inst, const Matching& m, int j) {
    int k = inst.lecturer_of(j);
    int worst = 0;
    for (int i = 1; i <= inst.n_students; ++i)
        if (m.of_student(i) == j)
            worst = std::max(worst, *inst.lecturer_prefs[k - 1].rank_of(i));
    return worst;
}

} // namespace

std::vector<BlockingPair> find_blocking_pairs(const Instance& inst,
                                              const Matching& m) {
    m.validate(inst);
    std::vector<BlockingPair> out;
    auto proj_load = m.project_loads(inst);
    auto lect_load = m.lecturer_loads(inst);

    for (int i = 1; i <= inst.n_students; ++i) {
        const PrefList& prefs = inst.student_prefs[i - 1];
        int cur = m.of_student(i);
        std::optional<int> cur_rank =
            cur == 0 ? std::nullopt : prefs.rank_of(cur);
        for (int j : prefs.flat()) {
            if (j == cur) continue;
            // condition 2: unassigned, or strictly prefers p_j
            if (cur != 0 && *prefs.rank_of(j) >= *cur_rank) continue;
            int k = inst.lecturer_of(j);
            bool proj_full = proj_load[j - 1] >= inst.project_capacity[j - 1];
            bool lect_full = lect_load[k - 1] >= inst.lecturer_capacity[k - 1];
            int rank_i = *inst.lecturer_prefs[k - 1].rank_of(i);
            if (!proj_full && !lect_full) {
                out.push_back({i, j, BlockKind::K3a});
            } else if (!proj_full && lect_full) {
                bool in_lect = cur != 0 && inst.lecturer_of(cur) == k;
                if (in_lect)
                    out.push_back({i, j, BlockKind::K3bi});
                else if (rank_i < worst_rank_of_lecturer(inst, m, k))
                    out.push_back({i, j, BlockKind::K3bii});
            } else if (proj_full) {
                if (rank_i < worst_rank_in_project(inst, m, j))
                    out.push_back({i, j, BlockKind::K3c});
            }
        }
    }
    return out;
}

bool is_stable(const Instance& inst, const Matching& m) {
    return find_blocking_pairs(inst, m).empty();
}

bool satisfies_condition_star(const Instance& inst, const Matching& m) {
    m.validate(inst);
    auto proj_load = m.project_loads(inst);
    auto lect_load = m.lecturer_loads(inst);

    for (int i = 1; i <= inst.n_students; ++i) {
        const PrefList& prefs = inst.student_prefs[i - 1];
        int cur = m.of_student(i);
        std::optional<int> cur_rank =
            cur == 0 ? std::nullopt : prefs.rank_of(cur);
        for (int j : prefs.flat()) {
            if (cur != 0 && *prefs.rank_of(j) >= *cur_rank) continue;
            int k = inst.lecturer_of(j);
            int rank_i = *inst.lecturer_prefs[k - 1].rank_of(i);
            bool lect_full = lect_load[k - 1] >= inst.lecturer_capacity[k - 1];
            bool proj_full = proj_load[j - 1] >= inst.project_capacity[j - 1];
            bool in_lect = cur != 0 && inst.lecturer_of(cur) == k;
            bool excused = false;
            if (lect_full && !in_lect &&
                worst_rank_of_lecturer(inst, m, k) <= rank_i)
                excused = true;
            if (proj_full && worst_rank_in_project(inst, m, j) <= rank_i)
                excused = true;
            if (!excused) return false;
        }
    }
    return true;
}

} // namespace spast
