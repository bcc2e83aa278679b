#include "spast/ip.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

#include "spast/approx.hpp"
#include "spast/stability.hpp"

namespace spast {

std::string IpModel::var_name(int v) const {
    const int np = n_pairs();
    const char* prefix = v < np ? "x" : (v < 2 * np ? "a" : "b");
    const auto& [i, j] = pairs[v % np];
    return std::string(prefix) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

IpModel build_model(const Instance& inst, Sense sense) {
    inst.validate();
    IpModel m;
    m.inst = inst;
    m.sense = sense;

    std::map<std::pair<int, int>, int> pair_idx;
    for (int i = 1; i <= inst.n_students; ++i)
        for (int j : inst.student_prefs[i - 1].flat()) {
            pair_idx[{i, j}] = m.n_pairs();
            m.pairs.emplace_back(i, j);
        }
    const int np = m.n_pairs();

    // first-variable index of each student's pair block, for slicing
    std::vector<std::vector<int>> by_student(inst.n_students + 1);
    std::vector<std::vector<int>> by_project(inst.n_projects + 1);
    for (int p = 0; p < np; ++p) {
        by_student[m.pairs[p].first].push_back(p);
        by_project[m.pairs[p].second].push_back(p);
    }

    for (int i = 1; i <= inst.n_students; ++i) {
        if (by_student[i].empty()) continue;
        LinRow r{"asg_" + std::to_string(i), {}, 'L', 1};
        for (int p : by_student[i]) r.terms.emplace_back(m.x_var(p), 1);
        m.rows.push_back(std::move(r));
    }
    for (int j = 1; j <= inst.n_projects; ++j) {
        if (by_project[j].empty()) continue;
        LinRow r{"pcap_" + std::to_string(j), {}, 'L', inst.project_capacity[j - 1]};
        for (int p : by_project[j]) r.terms.emplace_back(m.x_var(p), 1);
        m.rows.push_back(std::move(r));
    }
    for (int k = 1; k <= inst.n_lecturers; ++k) {
        LinRow r{"lcap_" + std::to_string(k), {}, 'L', inst.lecturer_capacity[k - 1]};
        for (int i = 1; i <= inst.n_students; ++i)
            for (int p : by_student[i])
                if (inst.lecturer_of(m.pairs[p].second) == k)
                    r.terms.emplace_back(m.x_var(p), 1);
        if (!r.terms.empty()) m.rows.push_back(std::move(r));
    }

    for (int p = 0; p < np; ++p) {
        const auto [i, j] = m.pairs[p];
        const int k = inst.lecturer_of(j);
        const int rank_ij = *inst.student_prefs[i - 1].rank_of(j);
        const int lrank_i = *inst.lecturer_prefs[k - 1].rank_of(i);

        // 5: sum_{r in S_ij} x_ir + a_ij + b_ij >= 1
        LinRow r5{"stab5_" + std::to_string(i) + "_" + std::to_string(j), {}, 'G', 1};
        for (int q : by_student[i])
            if (*inst.student_prefs[i - 1].rank_of(m.pairs[q].second) <= rank_ij)
                r5.terms.emplace_back(m.x_var(q), 1);
        r5.terms.emplace_back(m.a_var(p), 1);
        r5.terms.emplace_back(m.b_var(p), 1);
        m.rows.push_back(std::move(r5));

        // 6: sum_{u in T_ik} sum_{r in P_k ∩ A_u} x_ur - d_k a_ij >= 0
        LinRow r6{"stab6_" + std::to_string(i) + "_" + std::to_string(j), {}, 'G', 0};
        for (int u : inst.lecturer_prefs[k - 1].flat()) {
            if (u == i || *inst.lecturer_prefs[k - 1].rank_of(u) > lrank_i) continue;
            for (int q : by_student[u])
                if (inst.lecturer_of(m.pairs[q].second) == k)
                    r6.terms.emplace_back(m.x_var(q), 1);
        }
        r6.terms.emplace_back(m.a_var(p), -inst.lecturer_capacity[k - 1]);
        m.rows.push_back(std::move(r6));

        // 7: sum_{u in T_ijk} x_uj - c_j b_ij >= 0
        LinRow r7{"stab7_" + std::to_string(i) + "_" + std::to_string(j), {}, 'G', 0};
        for (int u : inst.lecturer_prefs[k - 1].flat()) {
            if (u == i || *inst.lecturer_prefs[k - 1].rank_of(u) > lrank_i) continue;
            for (int q : by_student[u])
                if (m.pairs[q].second == j)
                    r7.terms.emplace_back(m.x_var(q), 1);
        }
        r7.terms.emplace_back(m.b_var(p), -inst.project_capacity[j - 1]);
        m.rows.push_back(std::move(r7));
    }
    return m;
}

FeasibilityReport check_feasible(const IpModel& model, const Matching& m) {
    const Instance& inst = model.inst;
    m.validate(inst);
    const int np = model.n_pairs();
    std::vector<int> val(model.n_vars(), 0);

    for (int p = 0; p < np; ++p)
        if (m.of_student(model.pairs[p].first) == model.pairs[p].second)
            val[model.x_var(p)] = 1;

    auto lecturer_loads = m.lecturer_loads(inst);
    auto project_loads = m.project_loads(inst);

    // worst (highest) occupied rank per lecturer, and per project on its
    // lecturer's list
    std::vector<int> lect_worst(inst.n_lecturers + 1, 0);
    std::vector<int> proj_worst(inst.n_projects + 1, 0);
    for (int i = 1; i <= inst.n_students; ++i) {
        int j = m.of_student(i);
        if (j == 0) continue;
        int k = inst.lecturer_of(j);
        int r = *inst.lecturer_prefs[k - 1].rank_of(i);
        lect_worst[k] = std::max(lect_worst[k], r);
        proj_worst[j] = std::max(proj_worst[j], r);
    }

    for (int p = 0; p < np; ++p) {
        const auto [i, j] = model.pairs[p];
        const int k = inst.lecturer_of(j);
        const int lrank_i = *inst.lecturer_prefs[k - 1].rank_of(i);
        const int cur = m.of_student(i);
        bool in_lect = cur != 0 && inst.lecturer_of(cur) == k;
        if (!in_lect && lecturer_loads[k - 1] == inst.lecturer_capacity[k - 1] &&
            lect_worst[k] <= lrank_i)
            val[model.a_var(p)] = 1;
        if (cur != j && project_loads[j - 1] == inst.project_capacity[j - 1] &&
            proj_worst[j] <= lrank_i)
            val[model.b_var(p)] = 1;
    }

    FeasibilityReport rep;
    for (const auto& row : model.rows) {
        long lhs = 0;
        for (auto [v, c] : row.terms) lhs += c * val[v];
        bool ok = row.sense == 'L' ? lhs <= row.rhs : lhs >= row.rhs;
        if (!ok) {
            rep.feasible = false;
            rep.violated_rows.push_back(row.name);
        }
    }
    return rep;
}

std::string emit_lp(const IpModel& model) {
    std::ostringstream out;
    out << (model.sense == Sense::Maximize ? "Maximize" : "Minimize") << "\n";
    out << " obj:";
    if (model.n_pairs() == 0) {
        out << " 0";
    } else {
        for (int p = 0; p < model.n_pairs(); ++p)
            out << (p == 0 ? " " : " + ") << model.var_name(model.x_var(p));
    }
    out << "\nSubject To\n";
    for (const auto& row : model.rows) {
        out << " " << row.name << ":";
        bool first = true;
        for (auto [v, c] : row.terms) {
            if (first) {
                if (c < 0) out << " -";
                first = false;
            } else {
                out << (c < 0 ? " -" : " +");
            }
            long a = c < 0 ? -c : c;
            out << " ";
            if (a != 1) out << a << " ";
            out << model.var_name(v);
        }
        out << (row.sense == 'L' ? " <= " : " >= ") << row.rhs << "\n";
    }
    out << "Binary\n";
    for (int v = 0; v < model.n_vars(); ++v) out << " " << model.var_name(v) << "\n";
    out << "End\n";
    return out.str();
}

namespace {

// Stability requirement spawned when a student is left with an unmatched
// higher-or-equal preference: it must end up excused on the lecturer side
// (alpha) or the project side (beta).
struct Requirement {
    int i, j, k;
    int lrank_i; // rank(l_k, s_i)
    int sat_a = 0, undec_a = 0; // T_ik students assigned within P_k / undecided
    bool bad_a = false;         // some non-T_ik student occupies a slot of l_k
    int sat_b = 0, undec_b = 0; // T_ijk students assigned to p_j / undecided
    bool bad_b = false;
    bool active = true;

    bool possible(const Instance& inst) const {
        bool pa = !bad_a && sat_a + undec_a >= inst.lecturer_capacity[k - 1];
        bool pb = !bad_b && sat_b + undec_b >= inst.project_capacity[j - 1];
        return pa || pb;
    }
    bool settled(const Instance& inst) const {
        return (!bad_a && sat_a >= inst.lecturer_capacity[k - 1]) ||
               (!bad_b && sat_b >= inst.project_capacity[j - 1]);
    }
};

struct Solver {
    const Instance& inst;
    Sense sense;
    IpBudget budget;
    std::chrono::steady_clock::time_point start;

    std::vector<int> assign;      // current partial assignment, 0 = none
    std::vector<int> proj_load, lect_load;
    int assigned = 0;
    int left_out = 0; // decided students with no project

    // dense rank tables: 0 = not ranked
    std::vector<std::vector<int>> lrank;      // [k][u]
    std::vector<std::vector<int>> ranked_by;  // student -> lecturers ranking them

    std::vector<Requirement> reqs;
    std::vector<std::vector<int>> reqs_by_lect; // requirement indices per k
    struct Delta {
        int req;
        int d_sat_a, d_undec_a, d_sat_b, d_undec_b;
        bool set_bad_a, set_bad_b, deactivated;
    };
    std::vector<Delta> trail;

    long nodes = 0;
    bool exhausted = false;
    int best = -1;
    std::vector<int> best_assign;

    explicit Solver(const Instance& in, Sense s, IpBudget b)
        : inst(in), sense(s), budget(std::move(b)),
          start(std::chrono::steady_clock::now()),
          assign(in.n_students + 1, 0), proj_load(in.n_projects + 1, 0),
          lect_load(in.n_lecturers + 1, 0),
          lrank(in.n_lecturers + 1, std::vector<int>(in.n_students + 1, 0)),
          ranked_by(in.n_students + 1),
          reqs_by_lect(in.n_lecturers + 1) {
        for (int k = 1; k <= in.n_lecturers; ++k)
            for (int u : in.lecturer_prefs[k - 1].flat()) {
                lrank[k][u] = *in.lecturer_prefs[k - 1].rank_of(u);
                ranked_by[u].push_back(k);
            }
    }

    // Registers the consequences of fixing student u to project a (a may
    // be 0) against the affected requirements; returns false on a wipeout.
    // Only lecturers ranking u can host an affected requirement: T-sets
    // and the p_j/P_k occupancy tests all presuppose that relation.
    bool propagate(int u, int a) {
        bool ok = true;
        const int ak = a == 0 ? 0 : inst.lecturer_of(a);
        for (int k : ranked_by[u]) {
            for (int ri : reqs_by_lect[k]) {
                Requirement& r = reqs[ri];
                if (!r.active) continue;
                Delta d{ri, 0, 0, 0, 0, false, false, false};
                if (lrank[k][u] <= r.lrank_i) { // u != r.i: r.i < u always
                    d.d_undec_a = -1;
                    if (ak == k) d.d_sat_a = 1;
                    if (inst.student_prefs[u - 1].contains(r.j)) {
                        d.d_undec_b = -1;
                        if (a == r.j) d.d_sat_b = 1;
                    }
                } else {
                    if (ak == k && !r.bad_a) d.set_bad_a = true;
                    if (a == r.j && !r.bad_b) d.set_bad_b = true;
                }
                r.sat_a += d.d_sat_a;
                r.undec_a += d.d_undec_a;
                r.sat_b += d.d_sat_b;
                r.undec_b += d.d_undec_b;
                if (d.set_bad_a) r.bad_a = true;
                if (d.set_bad_b) r.bad_b = true;
                if (r.settled(inst)) {
                    r.active = false;
                    d.deactivated = true;
                }
                trail.push_back(d);
                if (!r.possible(inst)) ok = false;
            }
        }
        return ok;
    }

    void unwind(size_t mark, size_t rmark) {
        while (trail.size() > mark) {
            const Delta& d = trail.back();
            Requirement& r = reqs[d.req];
            r.sat_a -= d.d_sat_a;
            r.undec_a -= d.d_undec_a;
            r.sat_b -= d.d_sat_b;
            r.undec_b -= d.d_undec_b;
            if (d.set_bad_a) r.bad_a = false;
            if (d.set_bad_b) r.bad_b = false;
            if (d.deactivated) r.active = true;
            trail.pop_back();
        }
        while (reqs.size() > rmark) {
            reqs_by_lect[reqs.back().k].pop_back();
            reqs.pop_back();
        }
    }

    // Creates the requirement for pair (i, j) given students 1..depth are
    // already fixed. Returns false if immediately impossible.
    bool spawn(int i, int j, int depth) {
        Requirement r;
        r.i = i;
        r.j = j;
        r.k = inst.lecturer_of(j);
        r.lrank_i = lrank[r.k][i];
        for (int u : inst.lecturer_prefs[r.k - 1].flat()) {
            int a = u <= depth ? assign[u] : -1;
            if (u != i && lrank[r.k][u] <= r.lrank_i) {
                if (u > depth) {
                    ++r.undec_a;
                    if (inst.student_prefs[u - 1].contains(j)) ++r.undec_b;
                } else {
                    if (a != 0 && inst.lecturer_of(a) == r.k) ++r.sat_a;
                    if (a == j) ++r.sat_b;
                }
            } else if (u <= depth && a != 0) {
                // decided outside T, occupying a contested slot
                if (inst.lecturer_of(a) == r.k) r.bad_a = true;
                if (a == j) r.bad_b = true;
            }
        }
        if (r.settled(inst)) r.active = false;
        bool ok = r.possible(inst);
        reqs_by_lect[r.k].push_back(static_cast<int>(reqs.size()));
        reqs.push_back(r);
        return ok;
    }

    bool out_of_budget() {
        if (nodes > budget.node_limit) return true;
        if ((nodes & 1023) == 0) {
            auto dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            if (dt > budget.wall_seconds) return true;
        }
        return false;
    }

    void record_leaf() {
        Matching m;
        m.assigned.assign(assign.begin() + 1, assign.end());
        if (!is_stable(inst, m)) return; // belt and braces; should not trip
        if (best == -1 ||
            (sense == Sense::Maximize ? assigned > best : assigned < best)) {
            best = assigned;
            best_assign = assign;
        }
    }

    void dfs(int i) {
        if (++nodes, out_of_budget()) {
            exhausted = true;
            return;
        }
        if (i > inst.n_students) {
            record_leaf();
            return;
        }
        // bound: everyone undecided assigned (max) / left out (min)
        if (sense == Sense::Maximize && best >= 0 &&
            inst.n_students - left_out <= best)
            return;
        if (sense == Sense::Minimize && best >= 0 && assigned >= best) return;

        std::vector<int> options = inst.student_prefs[i - 1].flat();
        if (sense == Sense::Maximize)
            options.push_back(0);
        else
            options.insert(options.begin(), 0);

        for (int j : options) {
            if (exhausted) return;
            if (j != 0) {
                int k = inst.lecturer_of(j);
                if (proj_load[j] == inst.project_capacity[j - 1] ||
                    lect_load[k] == inst.lecturer_capacity[k - 1])
                    continue;
            }
            size_t mark = trail.size(), rmark = reqs.size();
            assign[i] = j;
            if (j != 0) {
                ++proj_load[j];
                ++lect_load[inst.lecturer_of(j)];
                ++assigned;
            } else {
                ++left_out;
            }
            bool ok = propagate(i, j);
            if (ok) {
                // every preference strictly or equally good that s_i did
                // not get must be excusable
                int got = j == 0 ? -1 : *inst.student_prefs[i - 1].rank_of(j);
                for (int jj : inst.student_prefs[i - 1].flat()) {
                    if (jj == j) continue;
                    int r = *inst.student_prefs[i - 1].rank_of(jj);
                    if (got != -1 && r >= got) continue;
                    if (!spawn(i, jj, i)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) dfs(i + 1);
            unwind(mark, rmark);
            assign[i] = 0;
            if (j != 0) {
                --proj_load[j];
                --lect_load[inst.lecturer_of(j)];
                --assigned;
            } else {
                --left_out;
            }
        }
    }
};

} // namespace

IpSolveResult solve(const IpModel& model, const IpBudget& budget) {
    if (model.n_vars() > budget.max_binaries)
        throw std::invalid_argument(
            "ip::solve: model has " + std::to_string(model.n_vars()) +
            " binaries, above the guard of " + std::to_string(budget.max_binaries) +
            "; emit the LP and use an external solver");
    Solver s(model.inst, model.sense, budget);
    // warm start: the approximation output is stable, so it is a valid
    // incumbent for either objective
    Matching warm = approx_match(model.inst, SchedulePolicy{});
    // With strictly ordered lists every stable matching has the same size,
    // so any stable matching is simultaneously maximum and minimum.
    auto strict = [](const std::vector<PrefList>& ls) {
        for (const auto& l : ls)
            for (const auto& g : l.groups)
                if (g.size() > 1) return false;
        return true;
    };
    if (strict(model.inst.student_prefs) &&
        strict(model.inst.lecturer_prefs)) {
        IpSolveResult res;
        res.optimal = true;
        res.matching = warm;
        res.objective = warm.size();
        res.nodes = 0;
        return res;
    }
    s.best = warm.size();
    s.best_assign.assign(1, 0);
    s.best_assign.insert(s.best_assign.end(), warm.assigned.begin(),
                         warm.assigned.end());
    s.dfs(1);

    IpSolveResult res;
    res.optimal = !s.exhausted;
    res.nodes = s.nodes;
    res.objective = s.best;
    res.matching.assigned.assign(s.best_assign.begin() + 1, s.best_assign.end());
    return res;
}

} // namespace spast
