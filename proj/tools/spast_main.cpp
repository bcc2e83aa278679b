#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spast/approx.hpp"
#include "spast/exact.hpp"
#include "spast/experiment.hpp"
#include "spast/generator.hpp"
#include "spast/hrt.hpp"
#include "spast/instance.hpp"
#include "spast/ip.hpp"
#include "spast/stability.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

spast::GenParams params_from_file(const std::string& path) {
    // key value pairs, one per line, '#' comments
    spast::GenParams p;
    std::istringstream in(slurp(path));
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        double v;
        if (!(ls >> v))
            throw std::runtime_error(path + ":" + std::to_string(n) +
                                     ": expected 'key value'");
        if (key == "n1") p.n1 = static_cast<int>(v);
        else if (key == "n2") p.n2 = static_cast<int>(v);
        else if (key == "n3") p.n3 = static_cast<int>(v);
        else if (key == "cP") p.total_project_cap = static_cast<int>(v);
        else if (key == "dL") p.total_lecturer_cap = static_cast<int>(v);
        else if (key == "l_min") p.l_min = static_cast<int>(v);
        else if (key == "l_max") p.l_max = static_cast<int>(v);
        else if (key == "t_s") p.t_s = v;
        else if (key == "t_l") p.t_l = v;
        else if (key == "popularity_ratio") p.popularity_ratio = v;
        else
            throw std::runtime_error(path + ":" + std::to_string(n) +
                                     ": unknown key '" + key + "'");
    }
    return p;
}

int run(int argc, char** argv) {
    CLI::App app{"SPA-ST toolkit: approximation, exact and IP solvers, "
                 "verification, HRT cloning, generation, experiments"};
    app.require_subcommand(1);

    // verify
    std::string v_inst, v_match;
    auto* verify = app.add_subcommand("verify", "check a matching for stability");
    verify->add_option("--in", v_inst, "instance file")->required();
    verify->add_option("--matching", v_match, "matching file")->required();

    // solve
    std::string s_inst, s_algo = "approx", s_schedule = "fifo", s_trace, s_out;
    int s_limit = 0;
    auto* solve_cmd = app.add_subcommand("solve", "compute a stable matching");
    solve_cmd->add_option("--in", s_inst, "instance file")->required();
    solve_cmd->add_option("--algo", s_algo, "approx|max|min|enumerate")
        ->check(CLI::IsMember({"approx", "max", "min", "enumerate"}));
    solve_cmd->add_option("--schedule", s_schedule, "fifo|shuffled:<seed>");
    solve_cmd->add_option("--trace", s_trace, "trace output file (approx only)");
    solve_cmd->add_option("--limit", s_limit, "stop enumeration after N matchings");
    solve_cmd->add_option("--out", s_out, "matching output file (default stdout)");

    // emit-ip
    std::string e_inst, e_out, e_sense = "max";
    auto* emit = app.add_subcommand("emit-ip", "write the IP model in LP format");
    emit->add_option("--in", e_inst, "instance file")->required();
    emit->add_option("--out", e_out, "LP output file")->required();
    emit->add_option("--sense", e_sense, "max|min")
        ->check(CLI::IsMember({"max", "min"}));

    // clone-hrt
    std::string c_inst, c_out;
    auto* clone = app.add_subcommand("clone-hrt", "clone to an HRT instance");
    clone->add_option("--in", c_inst, "instance file")->required();
    clone->add_option("--out", c_out, "HRT output file")->required();

    // generate
    std::string g_preset, g_params, g_out;
    int g_count = 1;
    std::uint64_t g_seed = 0;
    auto* gen = app.add_subcommand("generate", "write random instances");
    gen->add_option("--preset", g_preset, "preset name, e.g. SIZE1");
    gen->add_option("--params", g_params, "parameter file (key value lines)");
    gen->add_option("--count", g_count, "number of instances")
        ->check(CLI::PositiveNumber);
    gen->add_option("--seed", g_seed, "master seed");
    gen->add_option("--out", g_out, "output directory")->required();

    // experiment
    std::string x_preset, x_params, x_out, x_lp_dir;
    int x_count = 10, x_threads = 1;
    std::uint64_t x_seed = 0;
    double x_timeout = 1800.0;
    auto* exp = app.add_subcommand("experiment", "run a batch case");
    exp->add_option("--preset", x_preset, "preset name");
    exp->add_option("--params", x_params, "parameter file");
    exp->add_option("--count", x_count, "instances per case")
        ->check(CLI::PositiveNumber);
    exp->add_option("--seed", x_seed, "master seed");
    exp->add_option("--timeout", x_timeout, "per-run timeout in seconds");
    exp->add_option("--threads", x_threads, "worker threads")
        ->check(CLI::PositiveNumber);
    exp->add_option("--out", x_out, "results CSV path")->required();
    exp->add_option("--lp-dir", x_lp_dir,
                    "directory for LP files of out-of-reach instances");

    // sweep
    std::string w_preset, w_params;
    int w_count = 100;
    std::uint64_t w_seed = 0;
    auto* sweep = app.add_subcommand("sweep", "correctness sweep of the "
                                              "approximation on random instances");
    sweep->add_option("--preset", w_preset, "preset name");
    sweep->add_option("--params", w_params, "parameter file");
    sweep->add_option("--count", w_count, "instances")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", w_seed, "master seed");

    CLI11_PARSE(app, argc, argv);

    auto pick_params = [](const std::string& preset_name,
                          const std::string& file) {
        if (preset_name.empty() == file.empty())
            throw std::runtime_error("give exactly one of --preset/--params");
        return preset_name.empty() ? params_from_file(file)
                                   : spast::preset(preset_name);
    };

    if (*verify) {
        spast::Instance inst = spast::parse_instance(slurp(v_inst));
        spast::Matching m = spast::parse_matching(slurp(v_match), inst);
        auto blocks = spast::find_blocking_pairs(inst, m);
        for (const auto& b : blocks)
            std::cout << "block s" << b.student << " p" << b.project << ' '
                      << spast::kind_name(b.kind) << '\n';
        return blocks.empty() ? 0 : 1;
    }

    if (*solve_cmd) {
        spast::Instance inst = spast::parse_instance(slurp(s_inst));
        auto emit_matching = [&](const spast::Matching& m) {
            std::string text = spast::serialize_matching(m);
            if (s_out.empty())
                std::cout << text;
            else
                spit(s_out, text);
        };
        if (s_algo == "approx") {
            spast::SchedulePolicy policy = spast::SchedulePolicy::parse(s_schedule);
            std::vector<spast::TraceEvent> trace;
            spast::Matching m = spast::approx_match(
                inst, policy, nullptr, s_trace.empty() ? nullptr : &trace);
            if (!s_trace.empty()) spit(s_trace, spast::format_trace(trace));
            emit_matching(m);
            return 0;
        }
        if (s_algo == "enumerate") {
            int emitted = 0;
            spast::enumerate_stable(inst, {}, [&](const spast::Matching& m) {
                std::cout << spast::serialize_matching(m) << "---\n";
                ++emitted;
                return s_limit == 0 || emitted < s_limit;
            });
            return 0;
        }
        emit_matching(s_algo == "max" ? spast::max_stable(inst)
                                      : spast::min_stable(inst));
        return 0;
    }

    if (*emit) {
        spast::Instance inst = spast::parse_instance(slurp(e_inst));
        auto sense =
            e_sense == "max" ? spast::Sense::Maximize : spast::Sense::Minimize;
        spit(e_out, spast::emit_lp(spast::build_model(inst, sense)));
        return 0;
    }

    if (*clone) {
        spast::Instance inst = spast::parse_instance(slurp(c_inst));
        spit(c_out, spast::serialize_hrt(spast::clone_to_hrt(inst)));
        return 0;
    }

    if (*gen) {
        spast::GenParams p = pick_params(g_preset, g_params);
        std::filesystem::create_directories(g_out);
        for (int idx = 0; idx < g_count; ++idx) {
            p.seed = spast::instance_seed(g_seed, static_cast<std::uint64_t>(idx));
            spit(g_out + "/inst_" + std::to_string(idx) + ".spa",
                 spast::serialize_instance(spast::generate(p)));
        }
        return 0;
    }

    if (*exp) {
        spast::GenParams p = pick_params(x_preset, x_params);
        spast::RunOptions opts;
        opts.label = x_preset.empty() ? x_params : x_preset;
        opts.count = x_count;
        opts.seed = x_seed;
        opts.timeout_seconds = x_timeout;
        opts.threads = x_threads;
        opts.lp_dir = x_lp_dir;
        if (!x_lp_dir.empty()) std::filesystem::create_directories(x_lp_dir);
        std::vector<spast::InstanceResult> per_instance;
        spast::CaseStats stats = spast::run_case(p, opts, &per_instance);
        spit(x_out, spast::csv_header() + "\n" + spast::csv_row(stats) + "\n");
        spit(x_out + ".instances.csv", spast::per_instance_csv(per_instance));
        std::cout << spast::csv_header() << '\n' << spast::csv_row(stats) << '\n';
        return 0;
    }

    if (*sweep) {
        spast::GenParams p = pick_params(w_preset, w_params);
        spast::SweepReport rep = spast::correctness_sweep(p, w_count, w_seed);
        std::cout << "instances " << rep.instances << "\nexact_checked "
                  << rep.exact_checked << "\nviolations "
                  << rep.violations.size() << '\n';
        for (const auto& v : rep.violations) std::cerr << v << '\n';
        return rep.violations.empty() ? 0 : 1;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
