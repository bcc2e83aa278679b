#include "spast/approx.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace spast {

SchedulePolicy SchedulePolicy::parse(const std::string& text) {
    if (text == "fifo") return {};
    if (text.rfind("shuffled:", 0) == 0) {
        SchedulePolicy p;
        p.kind = Kind::Shuffled;
        p.seed = std::stoull(text.substr(9));
        return p;
    }
    throw std::invalid_argument("unknown schedule policy '" + text + "'");
}

std::string SchedulePolicy::str() const {
    if (kind == Kind::Fifo) return "fifo";
    return "shuffled:" + std::to_string(seed);
}

namespace {

// Assignees of a project or lecturer bucketed by (rank, phase at
// assignment time); assigned students never change phase, so the phase
// recorded here stays valid. Worst assignee = highest rank, phase-1
// students first within the rank, lowest index within the phase.
struct RankBuckets {
    std::map<int, std::array<std::set<int>, 2>> by_rank;

    void insert(int rank, int phase, int student) {
        by_rank[rank][phase - 1].insert(student);
    }
    void erase(int rank, int phase, int student) {
        auto it = by_rank.find(rank);
        it->second[phase - 1].erase(student);
        if (it->second[0].empty() && it->second[1].empty())
            by_rank.erase(it);
    }
    // (student, rank, phase) of the worst assignee; requires non-empty.
    std::tuple<int, int, int> worst() const {
        const auto& [rank, sets] = *by_rank.rbegin();
        if (!sets[0].empty()) return {*sets[0].begin(), rank, 1};
        return {*sets[1].begin(), rank, 2};
    }
    bool empty() const { return by_rank.empty(); }
};

struct Engine {
    const Instance& inst;
    std::vector<TraceEvent>* trace;
    ApproxStats stats;

    // student state
    struct Student {
        std::vector<std::pair<int, int>> master; // (project, rank), list order
        std::vector<int> next, prev;             // linked list over master
        std::vector<char> alive;
        int head = -1;
        int alive_count = 0;
        int phase = 1;
        // head-tie cursors (phase 1 only)
        int cursor_rank = -1;
        int first = -1;
        int second = -1;
        int supporter = 0; // project currently supporting this student, 0 none
        std::vector<int> apply_count; // per master position, main loop only
    };
    std::vector<Student> stu;

    struct Project {
        int cap = 0, lect = 0, alloc = 0;
        bool fully_available = false;
        std::set<int> precarious; // students with a precarious pair here
        std::set<int> supports;   // students relying on this project
        RankBuckets assignees;
    };
    std::vector<Project> prj;

    struct Lecturer {
        int cap = 0, alloc = 0;
        std::unordered_map<int, int> rank_of; // student -> rank
        std::set<int> precarious_projects;
        RankBuckets assignees;
        std::vector<int> projects;
    };
    std::vector<Lecturer> lec;

    std::vector<int> match; // index i-1 -> project or 0
    std::deque<int> queue;
    int step = 0;
    std::vector<std::pair<int, int>> pending_phase_moves; // (student, phase)

    explicit Engine(const Instance& inst_, std::vector<TraceEvent>* trace_)
        : inst(inst_), trace(trace_) {
        int n1 = inst.n_students, n2 = inst.n_projects, n3 = inst.n_lecturers;
        stu.resize(n1);
        prj.resize(n2);
        lec.resize(n3);
        match.assign(n1, 0);
        for (int j = 1; j <= n2; ++j) {
            prj[j - 1].cap = inst.project_capacity[j - 1];
            prj[j - 1].lect = inst.lecturer_of(j);
            lec[prj[j - 1].lect - 1].projects.push_back(j);
        }
        for (int k = 1; k <= n3; ++k) {
            lec[k - 1].cap = inst.lecturer_capacity[k - 1];
            int rank = 1;
            for (const auto& g : inst.lecturer_prefs[k - 1].groups) {
                for (int i : g) lec[k - 1].rank_of[i] = rank;
                rank += static_cast<int>(g.size());
            }
        }
        for (int j = 0; j < n2; ++j)
            prj[j].fully_available =
                prj[j].cap > 0 && lec[prj[j].lect - 1].cap > 0;
        for (int i = 1; i <= n1; ++i) {
            Student& s = stu[i - 1];
            int rank = 1;
            for (const auto& g : inst.student_prefs[i - 1].groups) {
                for (int j : g) s.master.emplace_back(j, rank);
                rank += static_cast<int>(g.size());
            }
            s.apply_count.assign(s.master.size(), 0);
            relink(s);
            if (s.master.empty()) s.phase = 3;
        }
    }

    static void relink(Student& s) {
        int n = static_cast<int>(s.master.size());
        s.next.assign(n, -1);
        s.prev.assign(n, -1);
        s.alive.assign(n, 1);
        for (int t = 0; t < n; ++t) {
            s.next[t] = t + 1 < n ? t + 1 : -1;
            s.prev[t] = t - 1;
        }
        s.head = n > 0 ? 0 : -1;
        s.alive_count = n;
        s.cursor_rank = -1;
        s.first = s.second = -1;
    }

    int rank_lk(int k, int i) const { return lec[k - 1].rank_of.at(i); }

    bool proj_full(int j) const { return prj[j - 1].alloc >= prj[j - 1].cap; }
    bool lect_full(int k) const { return lec[k - 1].alloc >= lec[k - 1].cap; }
    bool fully_available(int j) const {
        return !proj_full(j) && !lect_full(prj[j - 1].lect);
    }

    // --- event log -----------------------------------------------------

    void emit(const std::string& action) {
        ++step;
        if (trace) trace->push_back({step, action, match});
    }

    void flush_phase_moves() {
        for (auto [i, ph] : pending_phase_moves)
            emit("s" + std::to_string(i) + " moves to phase " +
                 std::to_string(ph));
        pending_phase_moves.clear();
    }

    // --- precariousness / support ---------------------------------------

    // Advance idx through the head tie of s (rank == cursor_rank) to the
    // next live, fully available entry; -1 when the tie is exhausted.
    int advance_in_head_tie(const Student& s, int idx) const {
        while (idx != -1 && s.master[idx].second == s.cursor_rank) {
            if (s.alive[idx] && prj[s.master[idx].first - 1].fully_available)
                return idx;
            idx = s.next[idx];
        }
        return -1;
    }

    // Supporter project of student i lost full availability: move the
    // second pointer onward, or retire the precarious pair.
    void reseat_support(int i) {
        Student& s = stu[i - 1];
        int p = match[i - 1];
        assert(p != 0 && s.supporter != 0);
        s.second = s.second == -1 ? -1 : s.next[s.second];
        s.second = advance_in_head_tie(s, s.second);
        if (s.second != -1) {
            int q = s.master[s.second].first;
            s.supporter = q;
            prj[q - 1].supports.insert(i);
        } else {
            s.supporter = 0;
            Project& pp = prj[p - 1];
            pp.precarious.erase(i);
            if (pp.precarious.empty())
                lec[pp.lect - 1].precarious_projects.erase(p);
        }
    }

    // Monotone flip; alerts every student this project was supporting.
    void retire_fully_available(int j) {
        Project& p = prj[j - 1];
        if (!p.fully_available) return;
        p.fully_available = false;
        std::set<int> supported;
        supported.swap(p.supports);
        for (int i : supported) reseat_support(i);
    }

    void refresh_availability_after_assign(int j) {
        if (proj_full(j)) retire_fully_available(j);
        int k = prj[j - 1].lect;
        if (lect_full(k))
            for (int q : lec[k - 1].projects) retire_fully_available(q);
    }

    // --- matching mutations ----------------------------------------------

    void add_pair(int i, int j, int supporter) {
        Student& s = stu[i - 1];
        Project& p = prj[j - 1];
        Lecturer& l = lec[p.lect - 1];
        match[i - 1] = j;
        ++p.alloc;
        ++l.alloc;
        int r = rank_lk(p.lect, i);
        p.assignees.insert(r, s.phase, i);
        l.assignees.insert(r, s.phase, i);
        if (supporter != 0) {
            assert(s.phase == 1);
            p.precarious.insert(i);
            l.precarious_projects.insert(j);
            prj[supporter - 1].supports.insert(i);
            s.supporter = supporter;
        }
        refresh_availability_after_assign(j);
    }

    void remove_pair(int i) {
        Student& s = stu[i - 1];
        int j = match[i - 1];
        Project& p = prj[j - 1];
        Lecturer& l = lec[p.lect - 1];
        match[i - 1] = 0;
        --p.alloc;
        --l.alloc;
        int r = rank_lk(p.lect, i);
        p.assignees.erase(r, s.phase, i);
        l.assignees.erase(r, s.phase, i);
        if (s.supporter != 0) {
            p.precarious.erase(i);
            if (p.precarious.empty()) l.precarious_projects.erase(j);
            prj[s.supporter - 1].supports.erase(i);
            s.supporter = 0;
        }
        // a pair is only ever displaced while its project or lecturer is
        // full, so full availability is never regained here
    }

    // Unlink p_j from s_i's working list; on emptying, reinstate and move
    // the student a phase on.
    void remove_pref(int i, int j) {
        Student& s = stu[i - 1];
        int idx = -1;
        for (int t = 0; t < (int)s.master.size(); ++t)
            if (s.alive[t] && s.master[t].first == j) {
                idx = t;
                break;
            }
        assert(idx != -1);
        s.alive[idx] = 0;
        if (s.prev[idx] != -1) s.next[s.prev[idx]] = s.next[idx];
        if (s.next[idx] != -1) s.prev[s.next[idx]] = s.prev[idx];
        if (s.head == idx) s.head = s.next[idx];
        --s.alive_count;
        if (s.alive_count == 0) {
            relink(s);
            ++s.phase;
            pending_phase_moves.emplace_back(i, s.phase);
        }
    }

    // --- favourite-project selection --------------------------------------

    struct Choice {
        int project = 0;
        int supporter = 0; // nonzero iff assignment would be precarious
    };

    Choice favourite(int i) {
        Student& s = stu[i - 1];
        assert(s.head != -1);
        int head_rank = s.master[s.head].second;
        if (s.phase == 2) return {s.master[s.head].first, 0};
        if (s.cursor_rank != head_rank) {
            s.cursor_rank = head_rank;
            s.first = s.head;
            s.second = -1;
        }
        s.first = advance_in_head_tie(s, s.first);
        if (s.first == -1) return {s.master[s.head].first, 0}; // firstFin
        if (s.second == -1 || s.second <= s.first)
            s.second = s.next[s.first];
        s.second = advance_in_head_tie(s, s.second);
        int supporter = s.second == -1 ? 0 : s.master[s.second].first;
        return {s.master[s.first].first, supporter};
    }

    // --- one application ---------------------------------------------------

    void apply(int i) {
        Student& s = stu[i - 1];
        Choice c = favourite(i);
        int j = c.project;
        int k = prj[j - 1].lect;
        Lecturer& l = lec[k - 1];
        Project& p = prj[j - 1];

        for (int t = 0; t < (int)s.master.size(); ++t)
            if (s.master[t].first == j) {
                stats.max_pair_applications =
                    std::max(stats.max_pair_applications, ++s.apply_count[t]);
                break;
            }

        std::string act = "s" + std::to_string(i) + " applies p" +
                          std::to_string(j);
        int my_rank = rank_lk(k, i);

        auto lect_meta_beats_worst = [&]() {
            if (l.assignees.empty()) return false;
            auto [w, wr, wp] = l.assignees.worst();
            return my_rank < wr ||
                   (my_rank == wr && s.phase == 2 && wp != 2);
        };
        auto proj_meta_beats_worst = [&]() {
            if (p.assignees.empty()) return false;
            auto [w, wr, wp] = p.assignees.worst();
            return my_rank < wr ||
                   (my_rank == wr && s.phase == 2 && wp != 2);
        };

        if (fully_available(j)) {
            add_pair(i, j, c.supporter);
            emit(act + ", accepted");
        } else if (!proj_full(j) && lect_full(k) &&
                   (!l.precarious_projects.empty() || lect_meta_beats_worst())) {
            int displaced;
            std::string note;
            if (!l.precarious_projects.empty()) {
                int jq = *l.precarious_projects.begin();
                displaced = *prj[jq - 1].precarious.begin();
                remove_pair(displaced);
            } else {
                auto [w, wr, wp] = l.assignees.worst();
                displaced = w;
                int jq = match[displaced - 1];
                remove_pair(displaced);
                remove_pref(displaced, jq);
                note = ", p" + std::to_string(jq) + " pref removed by s" +
                       std::to_string(displaced);
            }
            add_pair(i, j, c.supporter);
            queue.push_back(displaced);
            emit(act + ", accepted" + note);
        } else if (proj_full(j) && p.alloc > 0 &&
                   (!p.precarious.empty() || proj_meta_beats_worst())) {
            int displaced;
            std::string note;
            if (!p.precarious.empty()) {
                displaced = *p.precarious.begin();
                remove_pair(displaced);
            } else {
                auto [w, wr, wp] = p.assignees.worst();
                displaced = w;
                remove_pair(displaced);
                remove_pref(displaced, j);
                note = ", p" + std::to_string(j) + " pref removed by s" +
                       std::to_string(displaced);
            }
            add_pair(i, j, c.supporter);
            queue.push_back(displaced);
            emit(act + ", accepted" + note);
        } else {
            remove_pref(i, j);
            emit(act + ", rejected, p" + std::to_string(j) +
                 " pref removed by s" + std::to_string(i));
        }
        flush_phase_moves();
    }

    // --- promotion pass (removes type-3bi blocking pairs) -----------------

    void promote_students() {
        int n2 = inst.n_projects;
        std::vector<std::deque<std::pair<int, int>>> rho(n2); // (student, rank)
        std::vector<int> cur_rank(inst.n_students, 0);
        for (int i = 1; i <= inst.n_students; ++i) {
            int p = match[i - 1];
            if (p == 0) continue;
            cur_rank[i - 1] = *inst.student_prefs[i - 1].rank_of(p);
            int kp = prj[p - 1].lect;
            for (const auto& [j, r] : stu[i - 1].master) {
                if (r >= cur_rank[i - 1]) continue;
                if (prj[j - 1].lect != kp) continue;
                rho[j - 1].emplace_back(i, r);
            }
        }
        std::vector<char> on_stack(n2, 0);
        std::vector<int> stack;
        for (int j = 1; j <= n2; ++j)
            if (!proj_full(j) && !rho[j - 1].empty()) {
                stack.push_back(j);
                on_stack[j - 1] = 1;
            }
        while (!stack.empty()) {
            int j = stack.back();
            stack.pop_back();
            on_stack[j - 1] = 0;
            if (proj_full(j) || rho[j - 1].empty()) continue;
            auto [i, r] = rho[j - 1].front();
            rho[j - 1].pop_front();
            if (r < cur_rank[i - 1]) {
                int p = match[i - 1];
                --prj[p - 1].alloc;
                ++prj[j - 1].alloc;
                match[i - 1] = j;
                cur_rank[i - 1] = r;
                ++stats.promotions;
                emit("s" + std::to_string(i) + " promoted to p" +
                     std::to_string(j));
                if (!rho[p - 1].empty() && !on_stack[p - 1]) {
                    stack.push_back(p);
                    on_stack[p - 1] = 1;
                }
            }
            if (!rho[j - 1].empty() && !proj_full(j) && !on_stack[j - 1]) {
                stack.push_back(j);
                on_stack[j - 1] = 1;
            }
        }
    }

    Matching run(const SchedulePolicy& policy) {
        std::vector<int> order(inst.n_students);
        for (int i = 0; i < inst.n_students; ++i) order[i] = i + 1;
        if (policy.kind == SchedulePolicy::Kind::Shuffled) {
            uint64_t x = policy.seed ? policy.seed : 0x9E3779B97F4A7C15ULL;
            auto next_u64 = [&x]() {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                return x;
            };
            for (int t = inst.n_students - 1; t > 0; --t)
                std::swap(order[t], order[next_u64() % (t + 1)]);
        }
        for (int i : order)
            if (stu[i - 1].phase != 3) queue.push_back(i);

        while (!queue.empty()) {
            int i = queue.front();
            queue.pop_front();
            while (match[i - 1] == 0 && stu[i - 1].phase != 3) apply(i);
        }
        promote_students();
        stats.steps = step;

        Matching m(inst.n_students);
        m.assigned = match;
        return m;
    }
};

} // namespace

Matching approx_match(const Instance& inst, const SchedulePolicy& policy,
                      ApproxStats* stats, std::vector<TraceEvent>* trace) {
    Engine engine(inst, trace);
    Matching m = engine.run(policy);
    if (stats) *stats = engine.stats;
    return m;
}

std::string format_trace(const std::vector<TraceEvent>& trace) {
    std::ostringstream out;
    for (const TraceEvent& e : trace) {
        out << "step " << e.step << " | " << e.action << " |";
        for (size_t i = 0; i < e.assigned.size(); ++i) {
            out << " s" << i + 1 << "=";
            if (e.assigned[i] == 0)
                out << "-";
            else
                out << "p" << e.assigned[i];
        }
        out << '\n';
    }
    return out.str();
}

} // namespace spast
