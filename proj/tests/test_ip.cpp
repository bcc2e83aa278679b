#include <doctest.h>

#include "fixtures.hpp"
#include "spast/exact.hpp"
#include "spast/generator.hpp"
#include "spast/ip.hpp"
#include "spast/stability.hpp"

using namespace spast;

TEST_CASE("model shape on the converse instance") {
    IpModel m = build_model(fixtures::converse(), Sense::Maximize);
    CHECK(m.n_pairs() == 4);
    CHECK(m.n_vars() == 12);
    CHECK(m.pairs[0] == std::pair<int, int>{1, 1});
    CHECK(m.var_name(m.x_var(0)) == "x_1_1");
    CHECK(m.var_name(m.a_var(0)) == "a_1_1");
    CHECK(m.var_name(m.b_var(3)) == "b_2_3");
    // 2 assignment + 3 project + 2 lecturer + 3 stability rows per pair
    CHECK(m.rows.size() == 2 + 3 + 2 + 3 * 4);
}

TEST_CASE("check_feasible accepts exactly the stable matchings") {
    Instance inst = fixtures::tight();
    IpModel model = build_model(inst, Sense::Maximize);
    for (int a1 : {0, 2, 3})
        for (int a2 : {0, 3})
            for (int a3 : {0, 1, 2, 3}) {
                Matching m;
                m.assigned = {a1, a2, a3};
                try {
                    m.validate(inst);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                CHECK(check_feasible(model, m).feasible == is_stable(inst, m));
            }
}

TEST_CASE("violated rows are named") {
    Instance inst = fixtures::converse();
    IpModel model = build_model(inst, Sense::Maximize);
    Matching m;
    m.assigned = {1, 3}; // the derived unstable matching
    auto rep = check_feasible(model, m);
    CHECK(!rep.feasible);
    REQUIRE(rep.violated_rows.size() == 1);
    CHECK(rep.violated_rows[0] == "stab5_2_2");
}

TEST_CASE("LP emission is deterministic and well-formed") {
    Instance inst = fixtures::converse();
    std::string lp = emit_lp(build_model(inst, Sense::Maximize));
    CHECK(lp == emit_lp(build_model(inst, Sense::Maximize)));
    CHECK(lp.rfind("Maximize\n obj: x_1_1 + x_1_2 + x_2_2 + x_2_3\n", 0) == 0);
    CHECK(lp.find("Subject To\n") != std::string::npos);
    CHECK(lp.find(" lcap_1: x_1_1 + x_1_2 + x_2_2 <= 1\n") != std::string::npos);
    CHECK(lp.find(" stab5_1_1: x_1_1 + a_1_1 + b_1_1 >= 1\n") != std::string::npos);
    CHECK(lp.find(" stab7_1_1: - b_1_1 >= 0\n") != std::string::npos);
    CHECK(lp.find("Binary\n") != std::string::npos);
    CHECK(lp.substr(lp.size() - 4) == "End\n");

    std::string mn = emit_lp(build_model(inst, Sense::Minimize));
    CHECK(mn.rfind("Minimize\n", 0) == 0);
}

TEST_CASE("empty instance emits a constant objective") {
    Instance inst;
    inst.n_students = 1;
    inst.n_projects = 1;
    inst.n_lecturers = 1;
    inst.project_capacity = {1};
    inst.project_lecturer = {1};
    inst.lecturer_capacity = {1};
    inst.student_prefs = {PrefList{}};
    inst.lecturer_prefs = {PrefList{}};
    std::string lp = emit_lp(build_model(inst, Sense::Maximize));
    CHECK(lp.find("obj: 0\n") != std::string::npos);
}

TEST_CASE("solver matches the oracle on both objectives") {
    GenParams p;
    p.n1 = 6;
    p.n2 = 5;
    p.n3 = 2;
    p.total_project_cap = 8;
    p.total_lecturer_cap = 7;
    p.l_min = 1;
    p.l_max = 4;
    p.t_s = p.t_l = 0.35;
    for (int idx = 0; idx < 150; ++idx) {
        p.seed = instance_seed(777, idx);
        Instance inst = generate(p);
        IpSolveResult mx = solve(build_model(inst, Sense::Maximize));
        IpSolveResult mn = solve(build_model(inst, Sense::Minimize));
        REQUIRE(mx.optimal);
        REQUIRE(mn.optimal);
        REQUIRE(mx.objective == max_stable(inst).size());
        REQUIRE(mn.objective == min_stable(inst).size());
        mx.matching.validate(inst);
        CHECK(is_stable(inst, mx.matching));
        CHECK(is_stable(inst, mn.matching));
        CHECK(mx.matching.size() == mx.objective);
        CHECK(mn.matching.size() == mn.objective);
    }
}

TEST_CASE("binary guard refuses oversized models") {
    GenParams p = preset("TIES5");
    p.seed = 1;
    Instance inst = generate(p);
    IpModel model = build_model(inst, Sense::Maximize);
    CHECK(model.n_vars() > 600);
    CHECK_THROWS_AS(solve(model), std::invalid_argument);
}
