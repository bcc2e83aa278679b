#include "spast/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace spast {

std::optional<int> PrefList::rank_of(int id) const {
    int before = 0;
    for (const auto& g : groups) {
        for (int x : g)
            if (x == id) return before + 1;
        before += static_cast<int>(g.size());
    }
    return std::nullopt;
}

std::vector<int> PrefList::flat() const {
    std::vector<int> out;
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
}

size_t PrefList::length() const {
    size_t n = 0;
    for (const auto& g : groups) n += g.size();
    return n;
}

std::vector<int> Instance::projects_of(int k) const {
    std::vector<int> out;
    for (int j = 1; j <= n_projects; ++j)
        if (project_lecturer[j - 1] == k) out.push_back(j);
    return out;
}

size_t Instance::total_pref_length() const {
    size_t m = 0;
    for (const auto& pl : student_prefs) m += pl.length();
    return m;
}

namespace {

void check_pref_list(const PrefList& pl, int max_id, const char* owner,
                     int owner_id) {
    std::set<int> seen;
    for (const auto& g : pl.groups) {
        if (g.empty())
            throw std::invalid_argument(std::string(owner) + " " +
                                        std::to_string(owner_id) +
                                        ": empty tie group");
        for (int x : g) {
            if (x < 1 || x > max_id)
                throw std::invalid_argument(
                    std::string(owner) + " " + std::to_string(owner_id) +
                    ": id " + std::to_string(x) + " out of range");
            if (!seen.insert(x).second)
                throw std::invalid_argument(
                    std::string(owner) + " " + std::to_string(owner_id) +
                    ": duplicate entry " + std::to_string(x));
        }
    }
}

} // namespace

void Instance::validate() const {
    if (n_students < 0 || n_projects < 0 || n_lecturers < 0)
        throw std::invalid_argument("negative counts");
    if ((int)project_capacity.size() != n_projects ||
        (int)project_lecturer.size() != n_projects ||
        (int)lecturer_capacity.size() != n_lecturers ||
        (int)student_prefs.size() != n_students ||
        (int)lecturer_prefs.size() != n_lecturers)
        throw std::invalid_argument("field sizes disagree with counts");
    for (int j = 1; j <= n_projects; ++j) {
        if (project_capacity[j - 1] < 0)
            throw std::invalid_argument("project " + std::to_string(j) +
                                        ": negative capacity");
        int k = project_lecturer[j - 1];
        if (k < 1 || k > n_lecturers)
            throw std::invalid_argument("project " + std::to_string(j) +
                                        ": lecturer id out of range");
    }
    for (int k = 1; k <= n_lecturers; ++k)
        if (lecturer_capacity[k - 1] < 0)
            throw std::invalid_argument("lecturer " + std::to_string(k) +
                                        ": negative capacity");
    for (int i = 1; i <= n_students; ++i)
        check_pref_list(student_prefs[i - 1], n_projects, "student", i);
    for (int k = 1; k <= n_lecturers; ++k)
        check_pref_list(lecturer_prefs[k - 1], n_students, "lecturer", k);

    // Lecturer list must rank exactly the students ranking one of their
    // projects. Rejected rather than repaired so generator bugs surface.
    for (int k = 1; k <= n_lecturers; ++k) {
        std::set<int> derived;
        for (int i = 1; i <= n_students; ++i)
            for (int j : student_prefs[i - 1].flat())
                if (project_lecturer[j - 1] == k) derived.insert(i);
        std::set<int> listed;
        for (int i : lecturer_prefs[k - 1].flat()) listed.insert(i);
        if (derived != listed)
            throw std::invalid_argument(
                "lecturer " + std::to_string(k) +
                ": preference list disagrees with student lists");
    }
}

int Matching::size() const {
    int n = 0;
    for (int j : assigned)
        if (j != 0) ++n;
    return n;
}

std::vector<int> Matching::project_loads(const Instance& inst) const {
    std::vector<int> load(inst.n_projects, 0);
    for (int j : assigned)
        if (j != 0) ++load[j - 1];
    return load;
}

std::vector<int> Matching::lecturer_loads(const Instance& inst) const {
    std::vector<int> load(inst.n_lecturers, 0);
    for (int j : assigned)
        if (j != 0) ++load[inst.lecturer_of(j) - 1];
    return load;
}

void Matching::validate(const Instance& inst) const {
    if ((int)assigned.size() != inst.n_students)
        throw std::invalid_argument("matching size disagrees with instance");
    for (int i = 1; i <= inst.n_students; ++i) {
        int j = assigned[i - 1];
        if (j == 0) continue;
        if (j < 1 || j > inst.n_projects)
            throw std::invalid_argument("student " + std::to_string(i) +
                                        ": project id out of range");
        if (!inst.student_prefs[i - 1].contains(j))
            throw std::invalid_argument("student " + std::to_string(i) +
                                        " assigned unacceptable project " +
                                        std::to_string(j));
    }
    auto pl = project_loads(inst);
    for (int j = 1; j <= inst.n_projects; ++j)
        if (pl[j - 1] > inst.project_capacity[j - 1])
            throw std::invalid_argument("project " + std::to_string(j) +
                                        " over capacity");
    auto ll = lecturer_loads(inst);
    for (int k = 1; k <= inst.n_lecturers; ++k)
        if (ll[k - 1] > inst.lecturer_capacity[k - 1])
            throw std::invalid_argument("lecturer " + std::to_string(k) +
                                        " over capacity");
}

// ---------------------------------------------------------------------
// Parsing

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

int to_int(const std::string& tok, int line) {
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, "expected integer, got '" + tok + "'");
    }
}

// <groups> ::= '-' | item...   item ::= <int> | '(' <int>+ ')'
PrefList parse_groups(const std::vector<std::string>& toks, size_t from,
                      int line) {
    PrefList pl;
    if (from < toks.size() && toks[from] == "-") {
        if (from + 1 != toks.size())
            throw ParseError(line, "tokens after '-'");
        return pl;
    }
    size_t t = from;
    while (t < toks.size()) {
        if (toks[t] == "(") {
            std::vector<int> g;
            ++t;
            while (t < toks.size() && toks[t] != ")")
                g.push_back(to_int(toks[t++], line));
            if (t == toks.size()) throw ParseError(line, "unterminated tie");
            ++t;
            if (g.size() < 2)
                throw ParseError(line, "tie group needs at least 2 entries");
            pl.groups.push_back(std::move(g));
        } else if (toks[t] == ")") {
            throw ParseError(line, "unmatched ')'");
        } else {
            pl.groups.push_back({to_int(toks[t++], line)});
        }
    }
    return pl;
}

} // namespace

Instance parse_instance(const std::string& text) {
    auto lines = tokenize(text);
    size_t at = 0;
    auto next = [&]() -> const Line& {
        if (at >= lines.size())
            throw ParseError(lines.empty() ? 1 : lines.back().number,
                             "unexpected end of file");
        return lines[at++];
    };

    {
        const Line& l = next();
        if (l.tokens.size() != 2 || l.tokens[0] != "spa-st" ||
            l.tokens[1] != "1")
            throw ParseError(l.number, "expected header 'spa-st 1'");
    }
    Instance inst;
    {
        const Line& l = next();
        if (l.tokens.size() != 4 || l.tokens[0] != "counts")
            throw ParseError(l.number, "expected 'counts <n1> <n2> <n3>'");
        inst.n_students = to_int(l.tokens[1], l.number);
        inst.n_projects = to_int(l.tokens[2], l.number);
        inst.n_lecturers = to_int(l.tokens[3], l.number);
        if (inst.n_students < 0 || inst.n_projects < 0 || inst.n_lecturers < 0)
            throw ParseError(l.number, "negative count");
    }
    inst.project_capacity.assign(inst.n_projects, -1);
    inst.project_lecturer.assign(inst.n_projects, 0);
    inst.lecturer_capacity.assign(inst.n_lecturers, -1);
    inst.student_prefs.assign(inst.n_students, {});
    inst.lecturer_prefs.assign(inst.n_lecturers, {});

    for (int c = 0; c < inst.n_projects; ++c) {
        const Line& l = next();
        if (l.tokens.size() != 6 || l.tokens[0] != "project" ||
            l.tokens[2] != "lecturer" || l.tokens[4] != "cap")
            throw ParseError(l.number,
                             "expected 'project <j> lecturer <k> cap <c>'");
        int j = to_int(l.tokens[1], l.number);
        if (j < 1 || j > inst.n_projects)
            throw ParseError(l.number, "project id out of range");
        if (inst.project_lecturer[j - 1] != 0)
            throw ParseError(l.number, "duplicate project line");
        int k = to_int(l.tokens[3], l.number);
        if (k < 1 || k > inst.n_lecturers)
            throw ParseError(l.number, "lecturer id out of range");
        inst.project_lecturer[j - 1] = k;
        inst.project_capacity[j - 1] = to_int(l.tokens[5], l.number);
    }
    for (int c = 0; c < inst.n_lecturers; ++c) {
        const Line& l = next();
        if (l.tokens.size() < 5 || l.tokens[0] != "lecturer" ||
            l.tokens[2] != "cap" || l.tokens[4] != "prefs")
            throw ParseError(l.number,
                             "expected 'lecturer <k> cap <d> prefs <groups>'");
        int k = to_int(l.tokens[1], l.number);
        if (k < 1 || k > inst.n_lecturers)
            throw ParseError(l.number, "lecturer id out of range");
        if (inst.lecturer_capacity[k - 1] != -1)
            throw ParseError(l.number, "duplicate lecturer line");
        inst.lecturer_capacity[k - 1] = to_int(l.tokens[3], l.number);
        inst.lecturer_prefs[k - 1] = parse_groups(l.tokens, 5, l.number);
    }
    std::vector<bool> seen(inst.n_students, false);
    for (int c = 0; c < inst.n_students; ++c) {
        const Line& l = next();
        if (l.tokens.size() < 3 || l.tokens[0] != "student" ||
            l.tokens[2] != "prefs")
            throw ParseError(l.number, "expected 'student <i> prefs <groups>'");
        int i = to_int(l.tokens[1], l.number);
        if (i < 1 || i > inst.n_students)
            throw ParseError(l.number, "student id out of range");
        if (seen[i - 1]) throw ParseError(l.number, "duplicate student line");
        seen[i - 1] = true;
        inst.student_prefs[i - 1] = parse_groups(l.tokens, 3, l.number);
    }
    if (at != lines.size())
        throw ParseError(lines[at].number, "trailing content");

    inst.validate();
    return inst;
}

std::string format_groups(const PrefList& pl) {
    std::ostringstream out;
    if (pl.groups.empty()) {
        out << " -";
        return out.str();
    }
    for (const auto& g : pl.groups) {
        if (g.size() == 1) {
            out << ' ' << g[0];
        } else {
            out << " (";
            for (int x : g) out << ' ' << x;
            out << " )";
        }
    }
    return out.str();
}

namespace {

void write_groups(std::ostringstream& out, const PrefList& pl) {
    out << format_groups(pl);
}

} // namespace

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << "spa-st 1\n";
    out << "counts " << inst.n_students << ' ' << inst.n_projects << ' '
        << inst.n_lecturers << '\n';
    for (int j = 1; j <= inst.n_projects; ++j)
        out << "project " << j << " lecturer " << inst.project_lecturer[j - 1]
            << " cap " << inst.project_capacity[j - 1] << '\n';
    for (int k = 1; k <= inst.n_lecturers; ++k) {
        out << "lecturer " << k << " cap " << inst.lecturer_capacity[k - 1]
            << " prefs";
        write_groups(out, inst.lecturer_prefs[k - 1]);
        out << '\n';
    }
    for (int i = 1; i <= inst.n_students; ++i) {
        out << "student " << i << " prefs";
        write_groups(out, inst.student_prefs[i - 1]);
        out << '\n';
    }
    return out.str();
}

std::string serialize_matching(const Matching& m) {
    std::ostringstream out;
    for (size_t i = 0; i < m.assigned.size(); ++i)
        if (m.assigned[i] != 0)
            out << "assign " << i + 1 << ' ' << m.assigned[i] << '\n';
    out << "size " << m.size() << '\n';
    return out.str();
}

Matching parse_matching(const std::string& text, const Instance& inst) {
    Matching m(inst.n_students);
    bool saw_size = false;
    for (const Line& l : tokenize(text)) {
        if (l.tokens[0] == "assign") {
            if (saw_size) throw ParseError(l.number, "assign after size");
            if (l.tokens.size() != 3)
                throw ParseError(l.number, "expected 'assign <i> <j>'");
            int i = to_int(l.tokens[1], l.number);
            int j = to_int(l.tokens[2], l.number);
            if (i < 1 || i > inst.n_students)
                throw ParseError(l.number, "student id out of range");
            if (m.assigned[i - 1] != 0)
                throw ParseError(l.number, "duplicate assignment");
            m.assigned[i - 1] = j;
        } else if (l.tokens[0] == "size") {
            if (l.tokens.size() != 2)
                throw ParseError(l.number, "expected 'size <n>'");
            if (to_int(l.tokens[1], l.number) != m.size())
                throw ParseError(l.number, "size disagrees with assignments");
            saw_size = true;
        } else {
            throw ParseError(l.number, "unknown directive '" + l.tokens[0] +
                                           "'");
        }
    }
    if (!saw_size) throw ParseError(1, "missing size line");
    m.validate(inst);
    return m;
}

} // namespace spast
