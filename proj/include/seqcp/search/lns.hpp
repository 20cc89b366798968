#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "seqcp/engine/dfs.hpp"
#include "seqcp/search/request_branching.hpp"

namespace seqcp {

/// A complete solution: the visits of every route (alpha and omega included)
/// and the objective value.
struct Assignment {
    std::vector<std::vector<int>> routes;
    std::int64_t objective = 0;
};

inline Assignment capture(const std::vector<SeqVar*>& routes, const IntVar& objective) {
    Assignment a;
    for (const SeqVar* q : routes) a.routes.push_back(q->members());
    a.objective = objective.min();
    return a;
}

/// Picks the requests to take out of the incumbent.
using RelaxFn = std::function<std::vector<int>(std::mt19937_64&, const Assignment&)>;

inline RelaxFn random_relaxation(int n_requests, int size) {
    return [n_requests, size](std::mt19937_64& rng, const Assignment&) {
        std::vector<int> all(n_requests);
        std::iota(all.begin(), all.end(), 0);
        if (size >= n_requests) return all;
        std::vector<int> out;
        std::sample(all.begin(), all.end(), std::back_inserter(out), size, rng);
        return out;
    };
}

struct LnsOptions {
    int relax_size = 10;
    std::int64_t fail_limit = 1000;
    std::uint64_t seed = 0;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::int64_t max_iterations = -1;
    std::optional<std::int64_t> target;  // stop once the incumbent reaches it
    RelaxFn relax;  // defaults to random_relaxation(|R|, relax_size)
};

struct LnsStats {
    std::int64_t iterations = 0;
    std::int64_t improvements = 0;
    std::int64_t abandoned = 0;  // reconstruction failed before the search
    std::int64_t failures = 0;
};

/// First solution by DFS, stopping at the first leaf.
inline std::optional<Assignment> first_solution(Solver& solver, const std::vector<SeqVar*>& routes, IntVar& objective,
                                                const Branching& branching, SearchLimits limits = {}) {
    std::optional<Assignment> found;
    limits.max_solutions = 1;
    dfs(solver, branching, [&] { found = capture(routes, objective); }, limits);
    return found;
}

/// Relax-and-rebuild loop. Every iteration keeps the incumbent's order for
/// the requests that stay, appends them route by route, and searches for a
/// strictly better completion under a failure limit.
inline Assignment lns(Solver& solver, const std::vector<SeqVar*>& routes, const std::vector<Request>& requests,
                      IntVar& objective, const Branching& branching, Assignment incumbent, const LnsOptions& opt,
                      LnsStats* stats_out = nullptr, const std::function<void(const Assignment&)>& on_improve = {}) {
    LnsStats stats;
    std::mt19937_64 rng(opt.seed);
    const RelaxFn relax = opt.relax ? opt.relax : random_relaxation(static_cast<int>(requests.size()), opt.relax_size);
    std::vector<char> relaxed(routes.empty() ? 0 : routes[0]->size());
    Trail& trail = solver.trail();

    auto out_of_time = [&] { return opt.deadline && std::chrono::steady_clock::now() >= *opt.deadline; };

    auto on_target = [&] { return opt.target && incumbent.objective <= *opt.target; };

    while (!out_of_time() && !on_target() && (opt.max_iterations < 0 || stats.iterations < opt.max_iterations)) {
        ++stats.iterations;
        std::fill(relaxed.begin(), relaxed.end(), 0);
        for (int r : relax(rng, incumbent)) {
            relaxed[requests[r].pick] = 1;
            relaxed[requests[r].drop] = 1;
        }

        const auto level = trail.saveLevel();
        bool rebuilt = true;
        bool improved = false;
        try {
            for (std::size_t k = 0; k < routes.size(); ++k) {
                const auto& path = incumbent.routes[k];
                int last = path.front();
                for (std::size_t i = 1; i + 1 < path.size(); ++i) {
                    if (relaxed[path[i]]) continue;
                    // After `last` rather than at the end: propagation may
                    // already have placed later nodes.
                    routes[k]->insert(last, path[i]);
                    last = path[i];
                }
            }
            solver.fixpoint();
        } catch (const Inconsistency&) {
            solver.clear_queue();
            rebuilt = false;
            ++stats.abandoned;
        }
        if (rebuilt) {
            SearchLimits limits;
            limits.max_failures = opt.fail_limit;
            limits.deadline = opt.deadline;
            std::optional<Assignment> better;
            auto s = dfs(
                solver, branching, [&] { better = capture(routes, objective); }, limits, &objective,
                incumbent.objective - 1);
            stats.failures += s.failures;
            if (better && better->objective < incumbent.objective) {
                incumbent = std::move(*better);
                ++stats.improvements;
                improved = true;
            }
        }
        trail.restoreLevel(level);
        if (improved && on_improve) on_improve(incumbent);
    }
    if (stats_out) *stats_out = stats;
    return incumbent;
}

}  // namespace seqcp
