// Python bindings for the core operations: parsing, stability checking,
// the approximation algorithm, exact solving, LP emission, HRT cloning
// and instance generation. Matchings cross the boundary as plain lists
// (index i-1 -> project id, 0 = unassigned).

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spast/approx.hpp"
#include "spast/exact.hpp"
#include "spast/generator.hpp"
#include "spast/hrt.hpp"
#include "spast/instance.hpp"
#include "spast/ip.hpp"
#include "spast/stability.hpp"

namespace py = pybind11;
using namespace spast;

namespace {

Matching to_matching(const Instance& inst, const std::vector<int>& assigned) {
    Matching m;
    m.assigned = assigned;
    m.validate(inst);
    return m;
}

Sense parse_sense(const std::string& s) {
    if (s == "max") return Sense::Maximize;
    if (s == "min") return Sense::Minimize;
    throw std::invalid_argument("sense must be 'max' or 'min'");
}

} // namespace

PYBIND11_MODULE(_spastcore, m) {
    m.doc() = "Student-project allocation toolkit (core bindings)";

    py::class_<Instance>(m, "Instance")
        .def_readonly("n_students", &Instance::n_students)
        .def_readonly("n_projects", &Instance::n_projects)
        .def_readonly("n_lecturers", &Instance::n_lecturers)
        .def_readonly("project_capacity", &Instance::project_capacity)
        .def_readonly("project_lecturer", &Instance::project_lecturer)
        .def_readonly("lecturer_capacity", &Instance::lecturer_capacity)
        .def("__str__",
             [](const Instance& inst) { return serialize_instance(inst); });

    m.def("parse", &parse_instance, py::arg("text"),
          "Parse an instance from its text form.");
    m.def("serialize", &serialize_instance, py::arg("instance"),
          "Canonical text form; parse(serialize(x)) == x.");

    m.def(
        "approx",
        [](const Instance& inst, const std::string& schedule) {
            return approx_match(inst, SchedulePolicy::parse(schedule))
                .assigned;
        },
        py::arg("instance"), py::arg("schedule") = "fifo",
        "Run the 3/2-approximation; returns the assignment list.");

    m.def(
        "is_stable",
        [](const Instance& inst, const std::vector<int>& assigned) {
            return is_stable(inst, to_matching(inst, assigned));
        },
        py::arg("instance"), py::arg("assigned"));

    m.def(
        "blocking_pairs",
        [](const Instance& inst, const std::vector<int>& assigned) {
            std::vector<std::tuple<int, int, std::string>> out;
            for (const BlockingPair& b :
                 find_blocking_pairs(inst, to_matching(inst, assigned)))
                out.emplace_back(b.student, b.project, kind_name(b.kind));
            return out;
        },
        py::arg("instance"), py::arg("assigned"),
        "All blocking pairs as (student, project, kind) tuples.");

    m.def(
        "max_stable",
        [](const Instance& inst) { return max_stable(inst).assigned; },
        py::arg("instance"),
        "Exact maximum stable matching by enumeration (small instances).");
    m.def(
        "min_stable",
        [](const Instance& inst) { return min_stable(inst).assigned; },
        py::arg("instance"),
        "Exact minimum stable matching by enumeration (small instances).");

    m.def(
        "solve",
        [](const Instance& inst, const std::string& sense, int max_binaries) {
            IpBudget budget;
            budget.max_binaries = max_binaries;
            IpSolveResult r =
                solve(build_model(inst, parse_sense(sense)), budget);
            py::dict out;
            out["optimal"] = r.optimal;
            out["size"] = r.objective;
            out["assigned"] = r.matching.assigned;
            out["nodes"] = r.nodes;
            return out;
        },
        py::arg("instance"), py::arg("sense") = "max",
        py::arg("max_binaries") = 600,
        "Exact maximum/minimum stable matching via the internal solver.");

    m.def(
        "emit_lp",
        [](const Instance& inst, const std::string& sense) {
            return emit_lp(build_model(inst, parse_sense(sense)));
        },
        py::arg("instance"), py::arg("sense") = "max",
        "Render the stability integer program in LP text format.");

    m.def(
        "clone_hrt",
        [](const Instance& inst) { return serialize_hrt(clone_to_hrt(inst)); },
        py::arg("instance"),
        "Clone into a hospitals/residents instance; returns its text form.");

    m.def(
        "generate",
        [](const std::string& preset_name, uint64_t seed, uint64_t index) {
            GenParams p = preset(preset_name);
            p.seed = instance_seed(seed, index);
            return generate(p);
        },
        py::arg("preset"), py::arg("seed") = 0, py::arg("index") = 0,
        "Generate one random instance from a named preset.");
}
