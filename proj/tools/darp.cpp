// Dial-a-ride solver front end: solve, validate and bench.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "seqcp/darp/bench.hpp"
#include "seqcp/darp/solve.hpp"

namespace fs = std::filesystem;
using namespace seqcp::darp;

namespace {

enum Exit { kSolved = 0, kInfeasible = 1, kNoSolution = 2, kInputError = 3 };

Instance load(const std::string& path) {
    Instance inst = load_instance(path);
    if (inst.repaired)
        std::cerr << "warning: " << path << ": rounded distances broke the triangle inequality, " << inst.repaired
                  << " entries repaired\n";
    return inst;
}

struct SolveArgs {
    std::string instance;
    std::string variant = "darp";
    double time_limit = 60;
    std::uint64_t seed = 0;
    int relax_size = 10;
    std::int64_t fail_limit = 1000;
    std::string output;
    std::string json;
    std::string warm_start;
    bool quiet = false;
};

int run_solve(const SolveArgs& a) {
    Instance inst = load(a.instance);
    SolveOptions opt;
    opt.variant = parse_variant(a.variant);
    opt.time_limit = a.time_limit;
    opt.seed = a.seed;
    opt.relax_size = a.relax_size;
    opt.fail_limit = a.fail_limit;
    if (!a.warm_start.empty()) {
        std::ifstream in(a.warm_start);
        if (!in) throw std::runtime_error("cannot open " + a.warm_start);
        opt.warm_start = read_text(in, inst);
    }
    if (!a.quiet)
        opt.on_improve = [](const Solution& s, double t) {
            std::fprintf(stderr, "%8.2fs  %s\n", t, fixed2(s.objective).c_str());
        };
    SolveResult res = solve(inst, opt);
    if (res.status == Status::Infeasible) {
        std::cerr << "infeasible\n";
        return kInfeasible;
    }
    if (res.status == Status::NoSolution) {
        std::cerr << "no solution within the limits\n";
        return kNoSolution;
    }
    const Solution& s = *res.best;
    if (auto v = validate(inst, s, opt.variant); !v.empty()) {
        for (const auto& m : v) std::cerr << "invalid solution: " << m << "\n";
        throw std::logic_error("solver produced an invalid solution");
    }
    if (a.output.empty()) {
        write_text(std::cout, inst, s);
    } else {
        std::ofstream out(a.output);
        write_text(out, inst, s);
    }
    if (!a.json.empty()) {
        std::ofstream out(a.json);
        nlohmann::json j = to_json(inst, s);
        j["variant"] = a.variant;
        j["seed"] = a.seed;
        j["lns"] = {{"iterations", res.lns.iterations}, {"improvements", res.lns.improvements}};
        out << j.dump(2) << "\n";
    }
    if (!a.quiet)
        std::cerr << "objective " << fixed2(s.objective) << " after " << res.lns.iterations << " LNS iterations\n";
    return kSolved;
}

int run_validate(const std::string& instance, const std::string& solution, const std::string& variant) {
    Instance inst = load(instance);
    std::ifstream in(solution);
    if (!in) throw std::runtime_error("cannot open " + solution);
    Solution s = read_text(in, inst);
    auto v = validate(inst, s, parse_variant(variant));
    for (const auto& m : v) std::cout << m << "\n";
    if (v.empty()) std::cout << "valid, objective " << fixed2(s.objective) << "\n";
    return v.empty() ? 0 : 1;
}

struct BenchArgs {
    std::string dir;
    std::string bks;
    std::string profile;
    std::string variant = "darp";
    double time_limit = 60;
    std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& a) {
    BksTable bks = BksTable::load(a.bks);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(a.dir))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<RunResult> runs;
    std::printf("%-8s %10s %10s %8s\n", "instance", "objective", "bks", "gap%");
    for (const auto& f : files) {
        Instance inst = load(f.string());
        const double ref = bks.at(inst.name);
        SolveOptions opt;
        opt.variant = parse_variant(a.variant);
        opt.time_limit = a.time_limit;
        opt.seed = a.seed;
        SolveResult res = solve(inst, opt);
        RunResult r{inst.name, std::nullopt};
        if (res.best) {
            if (!validate(inst, *res.best, opt.variant).empty()) throw std::logic_error("invalid solution on " + inst.name);
            r.objective = unscale(res.best->objective);
        }
        runs.push_back(r);
        std::printf("%-8s %10s %10.2f %8.2f\n", canonical_name(inst.name).c_str(),
                    r.objective ? fixed2(res.best->objective).c_str() : "-", ref, 100 * primal_gap(r.objective, ref));
    }
    std::vector<double> taus;
    for (int i = 0; i <= 20; ++i) taus.push_back(i / 100.0);
    auto prof = gap_profile(runs, bks, taus);
    if (!a.profile.empty()) {
        std::ofstream out(a.profile);
        out << "tau,fraction\n";
        for (auto [t, f] : prof) out << t << "," << f << "\n";
    }
    return kSolved;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dial-a-ride solver on sequence variables"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
    solve_cmd->add_option("instance", sa.instance, "instance file (Cordeau format)")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--variant", sa.variant, "darp, pdptw or pdp")->check(CLI::IsMember({"darp", "pdptw", "pdp"}));
    solve_cmd->add_option("--time-limit", sa.time_limit, "seconds")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--seed", sa.seed, "LNS random seed");
    solve_cmd->add_option("--relax-size", sa.relax_size, "requests relaxed per LNS iteration")->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--fail-limit", sa.fail_limit, "failures per LNS iteration")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--output", sa.output, "solution file (default: stdout)");
    solve_cmd->add_option("--json", sa.json, "also write the solution as JSON");
    solve_cmd->add_option("--warm-start", sa.warm_start, "start LNS from this solution file")->check(CLI::ExistingFile);
    solve_cmd->add_flag("--quiet", sa.quiet, "no progress on stderr");

    std::string v_instance, v_solution, v_variant = "darp";
    auto* validate_cmd = app.add_subcommand("validate", "check a solution file");
    validate_cmd->add_option("instance", v_instance)->required()->check(CLI::ExistingFile);
    validate_cmd->add_option("solution", v_solution)->required()->check(CLI::ExistingFile);
    validate_cmd->add_option("--variant", v_variant)->check(CLI::IsMember({"darp", "pdptw", "pdp"}));

    BenchArgs ba;
    auto* bench_cmd = app.add_subcommand("bench", "solve every instance of a directory and report gaps");
    bench_cmd->add_option("dir", ba.dir)->required()->check(CLI::ExistingDirectory);
    bench_cmd->add_option("--bks", ba.bks, "CSV instance,bks")->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--profile", ba.profile, "write the gap profile as CSV");
    bench_cmd->add_option("--variant", ba.variant)->check(CLI::IsMember({"darp", "pdptw", "pdp"}));
    bench_cmd->add_option("--time-limit", ba.time_limit, "seconds per instance")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", ba.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }

    try {
        if (*solve_cmd) return run_solve(sa);
        if (*validate_cmd) return run_validate(v_instance, v_solution, v_variant);
        if (*bench_cmd) return run_bench(ba);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::out_of_range& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return 0;
}
