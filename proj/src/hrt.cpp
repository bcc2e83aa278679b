#include "spast/hrt.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spast {

int HrtMatching::size() const {
    int n = 0;
    for (int h : assigned) n += h != 0;
    return n;
}

HrtInstance clone_to_hrt(const Instance& inst) {
    inst.validate();
    HrtInstance hrt;
    hrt.n_hospitals = inst.n_projects;
    hrt.hospital_capacity = inst.project_capacity;

    hrt.n_residents = inst.n_students;
    hrt.resident_prefs = inst.student_prefs;
    hrt.dummy_of.assign(inst.n_students, 0);

    // dummies: ids n1+1..., lecturers ascending, a single head tie over
    // that lecturer's hospitals
    std::vector<std::vector<int>> dummies_of(inst.n_lecturers + 1);
    for (int k = 1; k <= inst.n_lecturers; ++k) {
        auto projs = inst.projects_of(k);
        int total = 0;
        for (int j : projs) total += inst.project_capacity[j - 1];
        int fk = total - inst.lecturer_capacity[k - 1];
        for (int t = 0; t < fk; ++t) {
            ++hrt.n_residents;
            dummies_of[k].push_back(hrt.n_residents);
            hrt.resident_prefs.push_back(PrefList{{projs}});
            hrt.dummy_of.push_back(k);
        }
    }

    hrt.hospital_prefs.resize(inst.n_projects);
    for (int j = 1; j <= inst.n_projects; ++j) {
        int k = inst.lecturer_of(j);
        PrefList& pl = hrt.hospital_prefs[j - 1];
        if (!dummies_of[k].empty()) pl.groups.push_back(dummies_of[k]);
        for (const auto& g : inst.lecturer_prefs[k - 1].groups) {
            std::vector<int> kept;
            for (int i : g)
                if (inst.student_prefs[i - 1].contains(j)) kept.push_back(i);
            if (!kept.empty()) pl.groups.push_back(std::move(kept));
        }
    }
    return hrt;
}

HrtMatching transport_matching(const Instance& inst, const HrtInstance& hrt,
                               const Matching& m) {
    m.validate(inst);
    HrtMatching out;
    out.assigned.assign(hrt.n_residents, 0);
    std::vector<int> load(hrt.n_hospitals + 1, 0);
    for (int i = 1; i <= inst.n_students; ++i) {
        int j = m.of_student(i);
        out.assigned[i - 1] = j;
        if (j != 0) ++load[j];
    }
    // residual capacity within each lecturer's hospitals is at least f_k
    // for a capacity-valid matching, so the fill below always succeeds
    for (int r = inst.n_students + 1; r <= hrt.n_residents; ++r) {
        int k = hrt.dummy_of[r - 1];
        int placed = 0;
        for (int j : inst.projects_of(k)) {
            if (load[j] < hrt.hospital_capacity[j - 1]) {
                ++load[j];
                out.assigned[r - 1] = j;
                placed = j;
                break;
            }
        }
        if (placed == 0)
            throw std::logic_error("transport_matching: no room for dummy r" +
                                   std::to_string(r));
    }
    return out;
}

namespace {

void check_hrt_matching(const HrtInstance& hrt, const HrtMatching& m) {
    if (static_cast<int>(m.assigned.size()) != hrt.n_residents)
        throw std::invalid_argument("hrt matching: wrong resident count");
    std::vector<int> load(hrt.n_hospitals + 1, 0);
    for (int r = 1; r <= hrt.n_residents; ++r) {
        int h = m.of_resident(r);
        if (h == 0) continue;
        if (h < 1 || h > hrt.n_hospitals)
            throw std::invalid_argument("hrt matching: bad hospital id");
        if (!hrt.resident_prefs[r - 1].contains(h))
            throw std::invalid_argument("hrt matching: unacceptable pair");
        if (++load[h] > hrt.hospital_capacity[h - 1])
            throw std::invalid_argument("hrt matching: hospital over capacity");
    }
}

} // namespace

bool hrt_is_stable(const HrtInstance& hrt, const HrtMatching& m) {
    check_hrt_matching(hrt, m);
    std::vector<int> load(hrt.n_hospitals + 1, 0);
    std::vector<int> worst(hrt.n_hospitals + 1, 0);
    for (int r = 1; r <= hrt.n_residents; ++r) {
        int h = m.of_resident(r);
        if (h == 0) continue;
        ++load[h];
        worst[h] = std::max(worst[h], *hrt.hospital_prefs[h - 1].rank_of(r));
    }
    for (int r = 1; r <= hrt.n_residents; ++r) {
        int cur = m.of_resident(r);
        auto cur_rank = cur == 0 ? std::optional<int>{}
                                 : hrt.resident_prefs[r - 1].rank_of(cur);
        for (int h : hrt.resident_prefs[r - 1].flat()) {
            if (cur_rank && *hrt.resident_prefs[r - 1].rank_of(h) >= *cur_rank)
                continue;
            auto hr = hrt.hospital_prefs[h - 1].rank_of(r);
            if (!hr) continue;
            if (load[h] < hrt.hospital_capacity[h - 1] || *hr < worst[h])
                return false;
        }
    }
    return true;
}

namespace {

void hrt_dfs(const HrtInstance& hrt, int r, std::vector<int>& load,
             HrtMatching& m, bool& go,
             const std::function<bool(const HrtMatching&)>& yield) {
    if (!go) return;
    if (r > hrt.n_residents) {
        if (hrt_is_stable(hrt, m)) go = yield(m);
        return;
    }
    for (int h : hrt.resident_prefs[r - 1].flat()) {
        if (load[h] == hrt.hospital_capacity[h - 1]) continue;
        ++load[h];
        m.assigned[r - 1] = h;
        hrt_dfs(hrt, r + 1, load, m, go, yield);
        m.assigned[r - 1] = 0;
        --load[h];
        if (!go) return;
    }
    hrt_dfs(hrt, r + 1, load, m, go, yield);
}

} // namespace

void hrt_enumerate_stable(const HrtInstance& hrt,
                          const std::function<bool(const HrtMatching&)>& yield,
                          int max_residents) {
    if (hrt.n_residents > max_residents)
        throw std::invalid_argument("hrt_enumerate_stable: instance too large");
    HrtMatching m;
    m.assigned.assign(hrt.n_residents, 0);
    std::vector<int> load(hrt.n_hospitals + 1, 0);
    bool go = true;
    hrt_dfs(hrt, 1, load, m, go, yield);
}

Matching pull_back(const Instance& inst, const HrtInstance& hrt,
                   const HrtMatching& m) {
    check_hrt_matching(hrt, m);
    Matching out;
    out.assigned.assign(inst.n_students, 0);
    for (int r = 1; r <= std::min(inst.n_students, hrt.n_residents); ++r)
        if (!hrt.is_dummy(r)) out.assigned[r - 1] = m.of_resident(r);
    return out;
}

std::string serialize_hrt(const HrtInstance& hrt) {
    std::ostringstream out;
    out << "hrt 1\n";
    out << "counts " << hrt.n_residents << ' ' << hrt.n_hospitals << '\n';
    for (int h = 1; h <= hrt.n_hospitals; ++h)
        out << "hospital " << h << " cap " << hrt.hospital_capacity[h - 1]
            << " prefs" << format_groups(hrt.hospital_prefs[h - 1]) << '\n';
    for (int r = 1; r <= hrt.n_residents; ++r) {
        out << "resident " << r;
        if (hrt.is_dummy(r)) out << " dummy-of " << hrt.dummy_of[r - 1];
        out << " prefs" << format_groups(hrt.resident_prefs[r - 1]) << '\n';
    }
    return out.str();
}

} // namespace spast
