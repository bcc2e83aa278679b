#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "spast/exact.hpp"
#include "spast/stability.hpp"

using namespace spast;

TEST_CASE("converse instance has exactly one stable matching") {
    Instance inst = fixtures::converse();
    std::set<std::vector<int>> found;
    enumerate_stable(inst, {}, [&](const Matching& m) {
        found.insert(m.assigned);
        return true;
    });
    CHECK(found == std::set<std::vector<int>>{{0, 2}});
}

TEST_CASE("singleton instance") {
    Instance inst = parse_instance(R"(spa-st 1
counts 1 1 1
project 1 lecturer 1 cap 1
lecturer 1 cap 1 prefs 1
student 1 prefs 1
)");
    std::set<std::vector<int>> found;
    enumerate_stable(inst, {}, [&](const Matching& m) {
        found.insert(m.assigned);
        return true;
    });
    CHECK(found == std::set<std::vector<int>>{{1}});
}

TEST_CASE("tight instance enumeration brackets the known matchings") {
    Instance inst = fixtures::tight();
    std::set<std::vector<int>> found;
    enumerate_stable(inst, {}, [&](const Matching& m) {
        CHECK(is_stable(inst, m));
        found.insert(m.assigned);
        return true;
    });
    CHECK(found.count({3, 0, 2}) == 1);
    CHECK(found.count({2, 3, 1}) == 1);

    CHECK(max_stable(inst).size() == 3);
    CHECK(min_stable(inst).size() == 2);
}

TEST_CASE("clone-source instance has maximum size 4") {
    CHECK(max_stable(fixtures::clone_src()).size() == 4);
}

TEST_CASE("budget limits are enforced") {
    Instance inst = fixtures::tight();
    EnumerationBudget tiny;
    tiny.max_students = 2;
    CHECK_THROWS_AS(max_stable(inst, tiny), std::invalid_argument);

    tiny = EnumerationBudget{};
    tiny.node_limit = 1;
    CHECK_THROWS_AS(max_stable(inst, tiny), BudgetExceeded);
}

TEST_CASE("early stop via the callback") {
    Instance inst = fixtures::tight();
    int seen = 0;
    enumerate_stable(inst, {}, [&](const Matching&) {
        ++seen;
        return false;
    });
    CHECK(seen == 1);
}

TEST_CASE("max/min tie-break is the lexicographic assignment vector") {
    // two symmetric students competing for two symmetric projects
    Instance inst = parse_instance(R"(spa-st 1
counts 2 2 2
project 1 lecturer 1 cap 1
project 2 lecturer 2 cap 1
lecturer 1 cap 1 prefs ( 1 2 )
lecturer 2 cap 1 prefs ( 1 2 )
student 1 prefs ( 1 2 )
student 2 prefs ( 1 2 )
)");
    CHECK(max_stable(inst).assigned == std::vector<int>{1, 2});
}
