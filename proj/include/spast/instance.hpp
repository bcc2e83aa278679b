#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spast {

// Ids are dense and 1-based throughout: students s1..s_n1, projects
// p1..p_n2, lecturers l1..l_n3. The value 0 means "none".

/// A preference list as an ordered sequence of tie groups.
struct PrefList {
    std::vector<std::vector<int>> groups;

    /// 1-based rank: 1 + number of entries in strictly earlier groups.
    /// Empty optional if the id does not appear.
    std::optional<int> rank_of(int id) const;

    bool contains(int id) const { return rank_of(id).has_value(); }

    /// All ids in list order.
    std::vector<int> flat() const;

    size_t length() const;

    bool operator==(const PrefList&) const = default;
};

struct Instance {
    int n_students = 0;
    int n_projects = 0;
    int n_lecturers = 0;
    std::vector<int> project_capacity;  // index j-1 -> c_j
    std::vector<int> project_lecturer;  // index j-1 -> lecturer id
    std::vector<int> lecturer_capacity; // index k-1 -> d_k
    std::vector<PrefList> student_prefs;  // index i-1, over project ids
    std::vector<PrefList> lecturer_prefs; // index k-1, over student ids

    /// Projects offered by lecturer k, ascending.
    std::vector<int> projects_of(int k) const;

    int lecturer_of(int j) const { return project_lecturer[j - 1]; }

    /// Total length of all student preference lists (m).
    size_t total_pref_length() const;

    /// Checks all structural invariants; throws std::invalid_argument on
    /// the first violation. In particular each lecturer's list must rank
    /// exactly the students that rank one of their projects.
    void validate() const;

    bool operator==(const Instance&) const = default;
};

struct Matching {
    // index i-1 -> assigned project id, 0 if unassigned
    std::vector<int> assigned;

    Matching() = default;
    explicit Matching(int n_students) : assigned(n_students, 0) {}

    int of_student(int i) const { return assigned[i - 1]; }
    int size() const;

    std::vector<int> project_loads(const Instance& inst) const;
    std::vector<int> lecturer_loads(const Instance& inst) const;

    /// Throws std::invalid_argument if the assignment violates
    /// acceptability or any capacity.
    void validate(const Instance& inst) const;

    bool operator==(const Matching&) const = default;
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

/// Parses the line-oriented instance format (see README). Validates the
/// result before returning.
Instance parse_instance(const std::string& text);

/// Canonical text form; parse_instance(serialize_instance(x)) == x.
std::string serialize_instance(const Instance& inst);

/// " a b ( c d )" style rendering of a preference list; "-" when empty.
std::string format_groups(const PrefList& pl);

/// Matching file format: "assign <i> <j>" per assigned student ascending,
/// then "size <|M|>".
std::string serialize_matching(const Matching& m);
Matching parse_matching(const std::string& text, const Instance& inst);

} // namespace spast
