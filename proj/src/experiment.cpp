#include "spast/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "spast/approx.hpp"
#include "spast/exact.hpp"
#include "spast/ip.hpp"
#include "spast/stability.hpp"

namespace spast {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

InstanceResult run_one(const Instance& inst, int id, double timeout_seconds,
                       const std::string& lp_dir) {
    InstanceResult r;
    r.id = id;

    auto t0 = Clock::now();
    Matching a = approx_match(inst, SchedulePolicy{});
    r.time_a_ms = ms_since(t0);
    r.approx_size = a.size();

    if (inst.n_students <= 12) {
        EnumerationBudget b;
        b.wall_seconds = timeout_seconds;
        t0 = Clock::now();
        try {
            r.max_size = max_stable(inst, b).size();
            r.time_max_ms = ms_since(t0);
        } catch (const BudgetExceeded&) {
        }
        r.total_max_ms = ms_since(t0);
        t0 = Clock::now();
        try {
            r.min_size = min_stable(inst, b).size();
            r.time_min_ms = ms_since(t0);
        } catch (const BudgetExceeded&) {
        }
        r.total_min_ms = ms_since(t0);
        return r;
    }

    IpBudget b;
    b.wall_seconds = timeout_seconds;
    if (3 * inst.total_pref_length() <= b.max_binaries) {
        t0 = Clock::now();
        IpModel mx = build_model(inst, Sense::Maximize);
        auto t1 = Clock::now();
        IpSolveResult rx = solve(mx, b);
        r.total_max_ms = ms_since(t0);
        if (rx.optimal) {
            r.max_size = rx.objective;
            r.time_max_ms = ms_since(t1);
        }
        t0 = Clock::now();
        IpModel mn = build_model(inst, Sense::Minimize);
        t1 = Clock::now();
        IpSolveResult rn = solve(mn, b);
        r.total_min_ms = ms_since(t0);
        if (rn.optimal) {
            r.min_size = rn.objective;
            r.time_min_ms = ms_since(t1);
        }
        return r;
    }

    if (!lp_dir.empty()) {
        for (Sense s : {Sense::Maximize, Sense::Minimize}) {
            std::string path = lp_dir + "/inst_" + std::to_string(id) +
                               (s == Sense::Maximize ? "_max.lp" : "_min.lp");
            std::ofstream out(path);
            out << emit_lp(build_model(inst, s));
        }
    }
    return r; // max/min stay N/A
}

std::string fmt(double v, int prec) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(prec);
    out << v;
    return out.str();
}

} // namespace

CaseStats summarize(const std::string& label,
                    const std::vector<InstanceResult>& results) {
    CaseStats s;
    s.label = label;
    s.count = static_cast<int>(results.size());
    double sum_a = 0, sum_min = 0, sum_max = 0;
    double sum_ta = 0, sum_tmin = 0, sum_tmax = 0;
    double sum_ram = 0, sum_rmm = 0, min_ram = 2.0;
    int n_eq = 0, n_098 = 0, n_ram = 0, n_rmm = 0;
    for (const auto& r : results) {
        if (r.approx_size) {
            ++s.done_a;
            sum_a += *r.approx_size;
            sum_ta += r.time_a_ms;
        }
        if (r.min_size) {
            ++s.done_min;
            sum_min += *r.min_size;
            sum_tmin += r.time_min_ms;
        }
        if (r.max_size) {
            ++s.done_max;
            sum_max += *r.max_size;
            sum_tmax += r.time_max_ms;
        }
        if (r.approx_size && r.max_size) {
            double ratio = *r.max_size == 0
                               ? 1.0
                               : static_cast<double>(*r.approx_size) / *r.max_size;
            sum_ram += ratio;
            min_ram = std::min(min_ram, ratio);
            n_eq += *r.approx_size == *r.max_size;
            n_098 += *r.approx_size >= 0.98 * *r.max_size;
            ++n_ram;
        }
        if (r.min_size && r.max_size) {
            sum_rmm += *r.max_size == 0
                           ? 1.0
                           : static_cast<double>(*r.min_size) / *r.max_size;
            ++n_rmm;
        }
    }
    if (s.done_a) {
        s.avg_a = sum_a / s.done_a;
        s.avg_time_a_ms = sum_ta / s.done_a;
    }
    if (s.done_min) {
        s.avg_min = sum_min / s.done_min;
        s.avg_time_min_ms = sum_tmin / s.done_min;
    }
    if (s.done_max) {
        s.avg_max = sum_max / s.done_max;
        s.avg_time_max_ms = sum_tmax / s.done_max;
    }
    if (n_ram) {
        s.min_a_over_max = min_ram;
        s.avg_a_over_max = sum_ram / n_ram;
        s.pct_a_eq_max = 100.0 * n_eq / n_ram;
        s.pct_a_ge_098max = 100.0 * n_098 / n_ram;
    }
    if (n_rmm) s.avg_min_over_max = sum_rmm / n_rmm;
    return s;
}

CaseStats run_case(const GenParams& params, const RunOptions& opts,
                   std::vector<InstanceResult>* per_instance) {
    std::vector<InstanceResult> results(opts.count);
    std::atomic<int> cursor{0};
    auto worker = [&] {
        for (;;) {
            int idx = cursor.fetch_add(1);
            if (idx >= opts.count) return;
            GenParams p = params;
            p.seed = instance_seed(opts.seed, static_cast<std::uint64_t>(idx));
            Instance inst = generate(p);
            results[idx] = run_one(inst, idx, opts.timeout_seconds, opts.lp_dir);
        }
    };
    int n_threads = std::max(1, opts.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (per_instance) *per_instance = results;
    return summarize(opts.label, results);
}

std::string csv_header() {
    return "case,min_a_over_max,pct_a_eq_max,pct_a_ge_098max,avg_a,avg_min,"
           "avg_max,avg_a_over_max,avg_min_over_max,avg_time_a_ms,"
           "avg_time_min_ms,avg_time_max_ms,done_a,done_min,done_max";
}

std::string csv_row(const CaseStats& s) {
    bool ratios = s.done_a > 0 && s.done_max > 0;
    std::ostringstream out;
    out << s.label << ',';
    out << (ratios ? fmt(s.min_a_over_max, 4) : "N/A") << ',';
    out << (ratios ? fmt(s.pct_a_eq_max, 1) : "N/A") << ',';
    out << (ratios ? fmt(s.pct_a_ge_098max, 1) : "N/A") << ',';
    out << (s.done_a ? fmt(s.avg_a, 2) : "N/A") << ',';
    out << (s.done_min ? fmt(s.avg_min, 2) : "N/A") << ',';
    out << (s.done_max ? fmt(s.avg_max, 2) : "N/A") << ',';
    out << (ratios ? fmt(s.avg_a_over_max, 4) : "N/A") << ',';
    out << (s.done_min && s.done_max ? fmt(s.avg_min_over_max, 4) : "N/A") << ',';
    out << (s.done_a ? fmt(s.avg_time_a_ms, 3) : "N/A") << ',';
    out << (s.done_min ? fmt(s.avg_time_min_ms, 3) : "N/A") << ',';
    out << (s.done_max ? fmt(s.avg_time_max_ms, 3) : "N/A") << ',';
    out << s.done_a << ',' << s.done_min << ',' << s.done_max;
    return out.str();
}

std::string per_instance_csv(const std::vector<InstanceResult>& results) {
    std::ostringstream out;
    out << "id,a,min,max,time_a_ms,time_min_ms,time_max_ms,total_min_ms,"
           "total_max_ms\n";
    auto cell = [&](const std::optional<int>& v) {
        if (v)
            out << *v;
        else
            out << "N/A";
    };
    for (const auto& r : results) {
        out << r.id << ',';
        cell(r.approx_size);
        out << ',';
        cell(r.min_size);
        out << ',';
        cell(r.max_size);
        out << ',' << fmt(r.time_a_ms, 3) << ',' << fmt(r.time_min_ms, 3) << ','
            << fmt(r.time_max_ms, 3) << ',' << fmt(r.total_min_ms, 3) << ','
            << fmt(r.total_max_ms, 3) << '\n';
    }
    return out.str();
}

SweepReport correctness_sweep(const GenParams& params, int count,
                              std::uint64_t seed) {
    SweepReport rep;
    for (int idx = 0; idx < count; ++idx) {
        GenParams p = params;
        p.seed = instance_seed(seed, static_cast<std::uint64_t>(idx));
        Instance inst = generate(p);
        ++rep.instances;
        Matching a = approx_match(inst, SchedulePolicy{});
        std::string why;
        try {
            a.validate(inst);
            auto blocks = find_blocking_pairs(inst, a);
            if (!blocks.empty())
                why = "unstable: s" + std::to_string(blocks[0].student) + " p" +
                      std::to_string(blocks[0].project) + " " +
                      kind_name(blocks[0].kind);
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (why.empty() && inst.n_students <= 12) {
            ++rep.exact_checked;
            int mx = max_stable(inst).size();
            if (3 * a.size() < 2 * mx)
                why = "ratio below 2/3: |A|=" + std::to_string(a.size()) +
                      " max=" + std::to_string(mx);
        }
        if (!why.empty())
            rep.violations.push_back("instance " + std::to_string(idx) + ": " +
                                     why + "\n" + serialize_instance(inst));
    }
    return rep;
}

} // namespace spast
