#include <doctest.h>

#include "fixtures.hpp"
#include "spast/approx.hpp"
#include "spast/exact.hpp"
#include "spast/generator.hpp"
#include "spast/stability.hpp"

using namespace spast;

TEST_CASE("tight instance reproduces the eight-step trace") {
    Instance inst = fixtures::tight();
    ApproxStats stats;
    std::vector<TraceEvent> trace;
    Matching m = approx_match(inst, SchedulePolicy{}, &stats, &trace);

    CHECK(m.assigned == std::vector<int>{3, 0, 2});
    CHECK(is_stable(inst, m));
    CHECK(m.size() == 2);
    CHECK(max_stable(inst).size() == 3); // ratio exactly 2/3

    REQUIRE(trace.size() == 8);
    const char* expected[] = {
        "s1 applies p3, accepted",
        "s2 applies p3, accepted",
        "s3 applies p3, rejected, p3 pref removed by s3",
        "s3 applies p2, accepted",
        "s1 applies p3, accepted, p3 pref removed by s2",
        "s2 moves to phase 2",
        "s2 applies p3, rejected, p3 pref removed by s2",
        "s2 moves to phase 3",
    };
    for (int t = 0; t < 8; ++t) {
        CHECK(trace[t].step == t + 1);
        CHECK(trace[t].action == expected[t]);
    }
    CHECK(trace[4].assigned == std::vector<int>{3, 0, 2});
    CHECK(stats.max_pair_applications <= 3);

    std::string text = format_trace(trace);
    CHECK(text.find("step 1 | s1 applies p3, accepted | s1=p3 s2=- s3=-\n") !=
          std::string::npos);
}

TEST_CASE("any schedule yields a stable matching on the tight instance") {
    Instance inst = fixtures::tight();
    for (uint64_t seed = 0; seed < 50; ++seed) {
        SchedulePolicy p{SchedulePolicy::Kind::Shuffled, seed};
        Matching m = approx_match(inst, p);
        CHECK(is_stable(inst, m));
        CHECK(3 * m.size() >= 2 * 3);
    }
}

TEST_CASE("schedule policy parsing") {
    CHECK(SchedulePolicy::parse("fifo").kind == SchedulePolicy::Kind::Fifo);
    SchedulePolicy p = SchedulePolicy::parse("shuffled:42");
    CHECK(p.kind == SchedulePolicy::Kind::Shuffled);
    CHECK(p.seed == 42);
    CHECK(p.str() == "shuffled:42");
    CHECK_THROWS(SchedulePolicy::parse("random"));
}

TEST_CASE("deterministic for a fixed policy") {
    GenParams p = preset("TIES5");
    p.n1 = 40;
    p.n2 = 30;
    p.n3 = 12;
    p.total_project_cap = 56;
    p.total_lecturer_cap = 48;
    p.seed = 99;
    Instance inst = generate(p);
    Matching a = approx_match(inst, SchedulePolicy{});
    CHECK(a == approx_match(inst, SchedulePolicy{}));
    SchedulePolicy sh{SchedulePolicy::Kind::Shuffled, 5};
    CHECK(approx_match(inst, sh) == approx_match(inst, sh));
}

TEST_CASE("random sweep: stable, valid, within ratio, bounded applications") {
    GenParams p;
    p.n1 = 9;
    p.n2 = 7;
    p.n3 = 3;
    p.total_project_cap = 12;
    p.total_lecturer_cap = 10;
    p.l_min = 2;
    p.l_max = 5;
    p.t_s = p.t_l = 0.4;
    for (int idx = 0; idx < 300; ++idx) {
        p.seed = instance_seed(2024, idx);
        Instance inst = generate(p);
        ApproxStats stats;
        Matching a = approx_match(inst, SchedulePolicy{}, &stats);
        a.validate(inst);
        REQUIRE(is_stable(inst, a));
        CHECK(stats.max_pair_applications <= 3);
        int mx = max_stable(inst).size();
        REQUIRE(3 * a.size() >= 2 * mx);
        CHECK(a.size() <= mx);
    }
}

TEST_CASE("promotion pass fires and leaves a stable matching") {
    // the main loop parks a student on a less-preferred project of a
    // lecturer who ends up with room on a better one; the promotion pass
    // must move them up or the result would block via their own lecturer
    Instance inst = parse_instance(R"(spa-st 1
counts 6 5 2
project 1 lecturer 2 cap 1
project 2 lecturer 1 cap 2
project 3 lecturer 2 cap 2
project 4 lecturer 1 cap 2
project 5 lecturer 2 cap 1
lecturer 1 cap 3 prefs 3 1 6 5 4
lecturer 2 cap 3 prefs 2 6 4 3 ( 1 5 )
student 1 prefs 1 4 5
student 2 prefs ( 1 5 )
student 3 prefs 2 ( 1 5 )
student 4 prefs ( 2 1 )
student 5 prefs 1 5 ( 2 3 )
student 6 prefs ( 3 2 ) ( 4 5 )
)");
    ApproxStats stats;
    Matching m = approx_match(inst, SchedulePolicy{}, &stats);
    CHECK(stats.promotions >= 1);
    CHECK(is_stable(inst, m));
    CHECK(3 * m.size() >= 2 * max_stable(inst).size());
}

TEST_CASE("students with empty lists are skipped") {
    Instance inst = fixtures::tight();
    inst.student_prefs[1] = PrefList{};
    inst.lecturer_prefs[1] = PrefList{{{1}, {3}}};
    Matching m = approx_match(inst);
    CHECK(m.of_student(2) == 0);
    CHECK(is_stable(inst, m));
}
