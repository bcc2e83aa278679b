#include <doctest.h>

#include <algorithm>
#include <map>

#include "spast/generator.hpp"

using namespace spast;

TEST_CASE("presets carry the published parameter vectors") {
    GenParams p = preset("SIZE1");
    CHECK(p.n1 == 100);
    CHECK(p.n2 == 60);
    CHECK(p.n3 == 40);
    CHECK(p.total_project_cap == 140);
    CHECK(p.total_lecturer_cap == 120);
    CHECK(p.l_min == 3);
    CHECK(p.l_max == 5);
    CHECK(p.t_s == doctest::Approx(0.2));

    p = preset("SIZE10");
    CHECK(p.n1 == 1000);

    p = preset("TIES1");
    CHECK(p.n1 == 300);
    CHECK(p.n2 == 250);
    CHECK(p.n3 == 120);
    CHECK(p.total_project_cap == 420);
    CHECK(p.total_lecturer_cap == 360);
    CHECK(p.t_s == doctest::Approx(0.0));
    CHECK(preset("TIES6").t_s == doctest::Approx(0.25));
    CHECK(preset("TIES11").t_l == doctest::Approx(0.5));

    p = preset("PREF1");
    CHECK(p.l_min == 1);
    CHECK(p.l_max == 1);
    CHECK(preset("PREF10").l_max == 10);

    CHECK(preset("SCALS5").n1 == 50000);
    p = preset("SCALP3");
    CHECK(p.n1 == 500);
    CHECK(p.t_s == doctest::Approx(0.4));
    CHECK(p.l_min == 75);
    CHECK(p.l_max == 75);

    CHECK_THROWS(preset("SIZE11"));
    CHECK_THROWS(preset("TIES0"));
    CHECK_THROWS(preset("BOGUS"));
}

TEST_CASE("generated instances satisfy the advertised shape") {
    GenParams p = preset("SIZE1");
    p.seed = 42;
    Instance inst = generate(p);
    inst.validate();
    CHECK(inst.n_students == 100);
    CHECK(inst.n_projects == 60);
    CHECK(inst.n_lecturers == 40);

    int cp = 0;
    for (int c : inst.project_capacity) cp += c;
    CHECK(cp == 140);
    auto [pmin, pmax] = std::minmax_element(inst.project_capacity.begin(),
                                            inst.project_capacity.end());
    CHECK(*pmax - *pmin <= 1);

    int dl = 0;
    for (int d : inst.lecturer_capacity) dl += d;
    CHECK(dl == 120);
    auto [lmin, lmax] = std::minmax_element(inst.lecturer_capacity.begin(),
                                            inst.lecturer_capacity.end());
    CHECK(*lmax - *lmin <= 1);

    for (const auto& pl : inst.student_prefs) {
        CHECK(pl.length() >= 3);
        CHECK(pl.length() <= 5);
    }

    // projects per lecturer also spread evenly (60/40 -> 1 or 2)
    for (int k = 1; k <= inst.n_lecturers; ++k) {
        size_t n = inst.projects_of(k).size();
        CHECK(n >= 1);
        CHECK(n <= 2);
    }
}

TEST_CASE("zero tie probability produces strict lists") {
    GenParams p = preset("TIES1");
    p.seed = 7;
    Instance inst = generate(p);
    for (const auto& pl : inst.student_prefs)
        for (const auto& g : pl.groups) CHECK(g.size() == 1);
    for (const auto& pl : inst.lecturer_prefs)
        for (const auto& g : pl.groups) CHECK(g.size() == 1);
}

TEST_CASE("same seed is byte-identical, different seeds differ") {
    GenParams p = preset("SIZE1");
    p.seed = 1234;
    std::string a = serialize_instance(generate(p));
    std::string b = serialize_instance(generate(p));
    CHECK(a == b);
    p.seed = 1235;
    CHECK(serialize_instance(generate(p)) != a);
}

TEST_CASE("popularity skew approximates the configured ratio") {
    GenParams p;
    p.n1 = 10000;
    p.n2 = 50;
    p.n3 = 10;
    p.total_project_cap = 60;
    p.total_lecturer_cap = 55;
    p.l_min = 1;
    p.l_max = 1;
    p.seed = 5;
    Instance inst = generate(p);
    int top = 0, bottom = 0;
    for (const auto& pl : inst.student_prefs) {
        for (int j : pl.flat()) {
            top += j == 1;
            bottom += j == inst.n_projects;
        }
    }
    // expected ratio 5, statistical band +-20%
    double ratio = static_cast<double>(top) / bottom;
    CHECK(ratio > 4.0);
    CHECK(ratio < 6.0);
}

TEST_CASE("parameter validation") {
    GenParams p = preset("SIZE1");
    p.l_max = p.n2 + 1;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
    p = preset("SIZE1");
    p.t_s = 1.5;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
    p = preset("SIZE1");
    p.n3 = p.n2 + 1;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
    p = preset("SIZE1");
    p.total_project_cap = p.n2 - 1;
    CHECK_THROWS_AS(generate(p), std::invalid_argument);
}

TEST_CASE("rng helpers are portable and in range") {
    Rng rng(1);
    Rng rng2(1);
    for (int t = 0; t < 1000; ++t) {
        CHECK(rng.next() == rng2.next());
        std::uint64_t v = rng.below(7);
        rng2.below(7);
        CHECK(v < 7);
        double r = rng.real();
        rng2.real();
        CHECK(r >= 0.0);
        CHECK(r < 1.0);
    }
}
