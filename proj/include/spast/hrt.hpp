#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spast/instance.hpp"

namespace spast {

/// HRT instance cloned from SPA-ST: hospitals mirror projects, residents
/// mirror students plus dummy residents that absorb the gap between a
/// lecturer's capacity and the summed capacities of their projects.
/// Residents and hospitals keep the source ids: resident r_i (i <= n1) is
/// student s_i, hospital h_j is project p_j. Dummies take ids n1+1, n1+2,
/// ... in ascending lecturer order.
struct HrtInstance {
    int n_residents = 0;
    int n_hospitals = 0;
    std::vector<int> hospital_capacity;  // e_j = c_j
    std::vector<PrefList> resident_prefs;
    std::vector<PrefList> hospital_prefs;
    std::vector<int> dummy_of; // per resident: 0 = real, else source lecturer

    bool is_dummy(int r) const { return dummy_of[r - 1] != 0; }
};

struct HrtMatching {
    std::vector<int> assigned; // hospital per resident, 0 = none

    int of_resident(int r) const { return assigned[r - 1]; }
    int size() const;
};

HrtInstance clone_to_hrt(const Instance& inst);

/// Carries a stable SPA-ST matching over to the clone and fills the
/// residual hospital capacity of each lecturer with that lecturer's
/// dummies (lecturers ascending, hospitals ascending, dummies ascending).
/// Throws std::logic_error if the dummies do not fit, which a stable
/// input matching cannot cause.
HrtMatching transport_matching(const Instance& inst, const HrtInstance& hrt,
                               const Matching& m);

/// Weak HRT stability: no resident-hospital pair where the resident is
/// unassigned or prefers the hospital, and the hospital is undersubscribed
/// or prefers the resident to its worst assignee.
bool hrt_is_stable(const HrtInstance& hrt, const HrtMatching& m);

/// Exhaustive enumeration of weakly stable matchings; yield may return
/// false to stop early. Guarded for desk-scale inputs only.
void hrt_enumerate_stable(const HrtInstance& hrt,
                          const std::function<bool(const HrtMatching&)>& yield,
                          int max_residents = 12);

/// Drops dummy assignments and reads the remaining pairs back as a
/// student-project matching. Capacity-valid, not necessarily stable.
Matching pull_back(const Instance& inst, const HrtInstance& hrt,
                   const HrtMatching& m);

std::string serialize_hrt(const HrtInstance& hrt);

} // namespace spast
