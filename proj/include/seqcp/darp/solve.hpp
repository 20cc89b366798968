#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>

#include "seqcp/darp/model.hpp"
#include "seqcp/darp/solution.hpp"
#include "seqcp/search/lns.hpp"

namespace seqcp::darp {

struct SolveOptions {
    Variant variant = Variant::Darp;
    double time_limit = 60;  // seconds, whole solve
    std::uint64_t seed = 0;
    int relax_size = 10;
    std::int64_t fail_limit = 1000;
    std::int64_t max_iterations = -1;
    std::int64_t max_discrepancy = -1;  // first solution only
    std::optional<std::int64_t> target;  // scaled; LNS stops once reached
    std::optional<Solution> warm_start;
    std::function<void(const Solution&, double seconds)> on_improve;
};

enum class Status { Solved, Infeasible, NoSolution };

struct SolveResult {
    Status status = Status::NoSolution;
    std::optional<Solution> best;
    double first_seconds = 0;
    LnsStats lns;
};

/// Rebuilds the routes of `a` on the model and reads off the schedule. The
/// model is left as it was. Throws Inconsistency if `a` does not fit.
inline Solution replay(Model& m, const Assignment& a) {
    Trail& trail = m.solver().trail();
    const auto level = trail.saveLevel();
    try {
        for (std::size_t k = 0; k < m.routes().size(); ++k)
            for (std::size_t i = 1; i + 1 < a.routes[k].size(); ++i) m.routes()[k]->insert(a.routes[k][i - 1], a.routes[k][i]);
        m.solver().fixpoint();
        for (std::size_t k = 0; k < m.routes().size(); ++k)
            if (m.routes()[k]->members() != a.routes[k]) fail();
    } catch (const Inconsistency&) {
        m.solver().clear_queue();
        trail.restoreLevel(level);
        throw;
    }
    Solution s = extract(m);
    trail.restoreLevel(level);
    return s;
}

/// Warm start, or the first DFS leaf, then LNS until the time limit.
inline SolveResult solve(const Instance& inst, const SolveOptions& opt) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto deadline = t0 + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(opt.time_limit));
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

    SolveResult res;
    std::unique_ptr<Model> m;
    try {
        m = std::make_unique<Model>(inst, opt.variant);
    } catch (const Inconsistency&) {
        res.status = Status::Infeasible;
        return res;
    }
    const Branching branching = m->branching();

    Assignment incumbent;
    if (opt.warm_start) {
        incumbent.routes = opt.warm_start->routes;
        bool shape_ok = static_cast<int>(incumbent.routes.size()) == inst.K;
        for (int k = 0; shape_ok && k < inst.K; ++k) {
            const auto& r = incumbent.routes[k];
            shape_ok = r.size() >= 2 && r.front() == inst.start(k) && r.back() == inst.end(k) &&
                       std::all_of(r.begin(), r.end(), [&](int v) { return v >= 0 && v < inst.n(); });
        }
        if (!shape_ok) throw std::invalid_argument("warm start routes do not match the instance");
        try {
            res.best = replay(*m, incumbent);
        } catch (const Inconsistency&) {
            throw std::invalid_argument("warm start does not satisfy the model");
        }
        incumbent.objective = res.best->objective;
    } else {
        SearchLimits limits;
        limits.deadline = deadline;
        limits.max_discrepancy = opt.max_discrepancy;
        std::optional<Assignment> first;
        std::optional<Solution> sol;
        limits.max_solutions = 1;
        auto stats = dfs(m->solver(), branching, [&] {
            first = capture(m->routes(), m->objective());
            sol = extract(*m);
        }, limits);
        if (!first) {
            res.status = stats.complete ? Status::Infeasible : Status::NoSolution;
            return res;
        }
        incumbent = *first;
        res.best = sol;
        res.first_seconds = elapsed();
        if (opt.on_improve) opt.on_improve(*sol, res.first_seconds);
    }
    res.status = Status::Solved;

    // LNS tracks assignments only; times come from replaying the winner.
    LnsOptions lo;
    lo.relax_size = opt.relax_size;
    lo.fail_limit = opt.fail_limit;
    lo.seed = opt.seed;
    lo.deadline = deadline;
    lo.max_iterations = opt.max_iterations;
    lo.target = opt.target;
    Assignment best = lns(m->solver(), m->routes(), m->requests(), m->objective(), branching, incumbent, lo, &res.lns,
                          [&](const Assignment& a) {
                              if (opt.on_improve) {
                                  Solution s = replay(*m, a);
                                  opt.on_improve(s, elapsed());
                              }
                          });
    if (best.objective < res.best->objective) res.best = replay(*m, best);
    return res;
}

}  // namespace seqcp::darp
