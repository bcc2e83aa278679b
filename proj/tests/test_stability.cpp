#include <doctest.h>

#include "fixtures.hpp"
#include "spast/stability.hpp"

using namespace spast;

namespace {

Matching mk(std::vector<int> v) {
    Matching m;
    m.assigned = std::move(v);
    return m;
}

} // namespace

TEST_CASE("tight instance: both known stable matchings verify") {
    Instance inst = fixtures::tight();
    CHECK(is_stable(inst, mk({3, 0, 2})));
    CHECK(is_stable(inst, mk({2, 3, 1})));
    CHECK(satisfies_condition_star(inst, mk({3, 0, 2})));
    CHECK(satisfies_condition_star(inst, mk({2, 3, 1})));
}

TEST_CASE("empty matching on the tight instance blocks with 3a") {
    Instance inst = fixtures::tight();
    auto blocks = find_blocking_pairs(inst, mk({0, 0, 0}));
    REQUIRE(!blocks.empty());
    // s1 with either head-tie project and everything undersubscribed
    CHECK(blocks[0] == BlockingPair{1, 3, BlockKind::K3a});
    CHECK(!is_stable(inst, mk({0, 0, 0})));
}

TEST_CASE("each blocking kind is produced and labelled") {
    // two students, one lecturer with two projects
    Instance inst = parse_instance(R"(spa-st 1
counts 2 2 1
project 1 lecturer 1 cap 1
project 2 lecturer 1 cap 1
lecturer 1 cap 1 prefs 1 2
student 1 prefs 1 2
student 2 prefs 1
)");
    // 3a: nobody assigned, everything has room
    auto b = find_blocking_pairs(inst, mk({0, 0}));
    REQUIRE(!b.empty());
    CHECK(b[0].kind == BlockKind::K3a);
    CHECK(kind_name(BlockKind::K3a) == std::string("3a"));

    // 3bi: s1 holds p2 of the full lecturer and prefers p1 (undersubscribed)
    b = find_blocking_pairs(inst, mk({2, 0}));
    REQUIRE(!b.empty());
    CHECK(b[0] == BlockingPair{1, 1, BlockKind::K3bi});

    // 3bii: l1 is full with s2 on p2, prefers s1 wanting undersubscribed p1
    Instance inst2 = parse_instance(R"(spa-st 1
counts 2 2 1
project 1 lecturer 1 cap 1
project 2 lecturer 1 cap 1
lecturer 1 cap 1 prefs 1 2
student 1 prefs 1
student 2 prefs 2
)");
    b = find_blocking_pairs(inst2, mk({0, 2}));
    REQUIRE(!b.empty());
    CHECK(b[0] == BlockingPair{1, 1, BlockKind::K3bii});

    // 3c: p1 full with the lower-ranked s2, s1 prefers it
    Instance inst3 = parse_instance(R"(spa-st 1
counts 2 1 1
project 1 lecturer 1 cap 1
lecturer 1 cap 2 prefs 1 2
student 1 prefs 1
student 2 prefs 1
)");
    b = find_blocking_pairs(inst3, mk({0, 1}));
    REQUIRE(!b.empty());
    CHECK(b[0] == BlockingPair{1, 1, BlockKind::K3c});
}

TEST_CASE("ties do not block: equal rank is not preference") {
    Instance inst = fixtures::tight();
    // s1 holds p2; p3 is tied with p2, so (s1,p3) must not block
    Matching m = mk({2, 3, 0});
    for (const auto& b : find_blocking_pairs(inst, m)) CHECK(b.student != 1);
}

TEST_CASE("condition (*) agrees with the definitional check") {
    Instance inst = fixtures::tight();
    std::vector<Matching> all;
    // every capacity-feasible assignment over acceptable projects
    for (int a1 : {0, 2, 3})
        for (int a2 : {0, 3})
            for (int a3 : {0, 1, 2, 3}) {
                Matching m = mk({a1, a2, a3});
                try {
                    m.validate(inst);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                CHECK(is_stable(inst, m) == satisfies_condition_star(inst, m));
            }
}

TEST_CASE("invalid matchings are rejected, not scanned") {
    Instance inst = fixtures::tight();
    CHECK_THROWS_AS(find_blocking_pairs(inst, mk({3, 3, 0})),
                    std::invalid_argument);
}
