#include <doctest.h>

#include "fixtures.hpp"
#include "spast/experiment.hpp"

using namespace spast;

namespace {

GenParams small_params() {
    GenParams p;
    p.n1 = 8;
    p.n2 = 6;
    p.n3 = 3;
    p.total_project_cap = 10;
    p.total_lecturer_cap = 9;
    p.l_min = 2;
    p.l_max = 4;
    p.t_s = p.t_l = 0.3;
    return p;
}

} // namespace

TEST_CASE("csv header is frozen") {
    CHECK(csv_header() ==
          "case,min_a_over_max,pct_a_eq_max,pct_a_ge_098max,avg_a,avg_min,"
          "avg_max,avg_a_over_max,avg_min_over_max,avg_time_a_ms,"
          "avg_time_min_ms,avg_time_max_ms,done_a,done_min,done_max");
}

TEST_CASE("run_case aggregates a small oracle-backed batch") {
    RunOptions opts;
    opts.label = "small";
    opts.count = 40;
    opts.seed = 5;
    std::vector<InstanceResult> rows;
    CaseStats s = run_case(small_params(), opts, &rows);
    CHECK(s.count == 40);
    CHECK(s.done_a == 40);
    CHECK(s.done_min == 40);
    CHECK(s.done_max == 40);
    CHECK(s.min_a_over_max >= 2.0 / 3.0);
    CHECK(s.avg_min_over_max <= s.avg_a_over_max);
    CHECK(s.avg_a_over_max <= 1.0 + 1e-12);
    CHECK(s.pct_a_eq_max >= 0);
    CHECK(s.pct_a_eq_max <= 100);
    CHECK(s.pct_a_ge_098max >= s.pct_a_eq_max);
    for (const auto& r : rows) {
        REQUIRE(r.approx_size);
        REQUIRE(r.min_size);
        REQUIRE(r.max_size);
        CHECK(*r.min_size <= *r.approx_size);
        CHECK(*r.approx_size <= *r.max_size);
    }

    // size/ratio columns are independent of thread count
    RunOptions par = opts;
    par.threads = 4;
    CaseStats s4 = run_case(small_params(), par);
    CHECK(s4.min_a_over_max == s.min_a_over_max);
    CHECK(s4.avg_a == s.avg_a);
    CHECK(s4.avg_min == s.avg_min);
    CHECK(s4.avg_max == s.avg_max);
    CHECK(s4.pct_a_eq_max == s.pct_a_eq_max);
}

TEST_CASE("injected tight instance yields the 2/3 minimum ratio") {
    Instance inst = fixtures::tight();
    InstanceResult r;
    r.id = 0;
    r.approx_size = 2;
    r.min_size = 2;
    r.max_size = 3;
    CaseStats s = summarize("tight", {r});
    CHECK(s.min_a_over_max == doctest::Approx(2.0 / 3.0));
    std::string row = csv_row(s);
    CHECK(row.rfind("tight,0.6667,0.0,0.0,2.00,2.00,3.00,", 0) == 0);
}

TEST_CASE("na columns appear when exact solving is out of reach") {
    InstanceResult r;
    r.id = 0;
    r.approx_size = 12;
    CaseStats s = summarize("big", {r});
    std::string row = csv_row(s);
    CHECK(row.rfind("big,N/A,N/A,N/A,12.00,N/A,N/A,N/A,N/A,", 0) == 0);
    CHECK(row.substr(row.size() - 6) == ",1,0,0");
}

TEST_CASE("no-ties batch is always optimal") {
    GenParams p = small_params();
    p.t_s = p.t_l = 0.0;
    RunOptions opts;
    opts.label = "noties";
    opts.count = 60;
    opts.seed = 12;
    CaseStats s = run_case(p, opts);
    CHECK(s.pct_a_eq_max == doctest::Approx(100.0));
    CHECK(s.avg_min_over_max == doctest::Approx(1.0));
}

TEST_CASE("correctness sweep finds no violations") {
    SweepReport rep = correctness_sweep(small_params(), 150, 9);
    CHECK(rep.instances == 150);
    CHECK(rep.exact_checked == 150);
    CHECK(rep.violations.empty());
}

TEST_CASE("per-instance csv shape") {
    InstanceResult r;
    r.id = 3;
    r.approx_size = 5;
    std::string text = per_instance_csv({r});
    CHECK(text.rfind("id,a,min,max,", 0) == 0);
    CHECK(text.find("\n3,5,N/A,N/A,") != std::string::npos);
}
