#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "seqcp/engine/solver.hpp"

namespace seqcp {

struct Decision {
    std::function<void()> apply;
    std::int64_t score = 0;
};

/// Returns the children of the current node, left to right. An empty list
/// means every variable is fixed: the node is a solution.
using Branching = std::function<std::vector<Decision>()>;

struct SearchLimits {
    std::int64_t max_failures = -1;
    std::int64_t max_solutions = -1;
    std::int64_t max_nodes = -1;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    // Sum of branch indexes taken along a path. -1 disables the cap.
    std::int64_t max_discrepancy = -1;
};

struct SearchStats {
    std::int64_t nodes = 0;
    std::int64_t failures = 0;
    std::int64_t solutions = 0;
    std::optional<std::int64_t> best;
    bool complete = true;  // false when a limit cut the search short
};

/// Depth-first search. With `minimize` set, every solution tightens the
/// objective to best-1 for the remainder of the search; `upper_bound` seeds
/// the same bound before the first solution (pass best-1 yourself if you
/// want strict improvement over a known value).
///
/// The solver state is the same before and after the call.
inline SearchStats dfs(Solver& solver, const Branching& branching, const std::function<void()>& on_solution,
                       const SearchLimits& limits = {}, IntVar* minimize = nullptr,
                       std::optional<std::int64_t> upper_bound = std::nullopt) {
    SearchStats stats;
    Trail& trail = solver.trail();
    bool stop = false;

    auto limit_hit = [&] {
        if (limits.max_failures >= 0 && stats.failures >= limits.max_failures) return true;
        if (limits.max_nodes >= 0 && stats.nodes >= limits.max_nodes) return true;
        if (limits.max_solutions >= 0 && stats.solutions >= limits.max_solutions) return true;
        if (limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline) return true;
        return false;
    };

    auto tighten = [&] {
        if (!minimize) return;
        if (stats.best)
            minimize->remove_above(*stats.best - 1);
        else if (upper_bound)
            minimize->remove_above(*upper_bound);
    };

    std::function<void(std::int64_t)> explore = [&](std::int64_t discrepancy) {
        if (limit_hit()) {
            stop = true;
            return;
        }
        std::vector<Decision> decisions = branching();
        if (decisions.empty()) {
            ++stats.solutions;
            if (minimize) stats.best = minimize->value();
            if (on_solution) on_solution();
            return;
        }
        for (std::size_t i = 0; i < decisions.size() && !stop; ++i) {
            const std::int64_t d = discrepancy + static_cast<std::int64_t>(i);
            if (limits.max_discrepancy >= 0 && d > limits.max_discrepancy) {
                stats.complete = false;
                break;
            }
            const auto level = trail.saveLevel();
            ++stats.nodes;
            try {
                decisions[i].apply();
                tighten();
                solver.fixpoint();
                explore(d);
            } catch (const Inconsistency&) {
                solver.clear_queue();
                ++stats.failures;
            }
            trail.restoreLevel(level);
            if (!stop && limit_hit()) stop = true;
        }
    };

    const auto root = trail.saveLevel();
    try {
        tighten();
        solver.fixpoint();
        explore(0);
    } catch (const Inconsistency&) {
        solver.clear_queue();
        ++stats.failures;
    }
    trail.restoreLevel(root);
    if (stop) stats.complete = false;
    return stats;
}

}  // namespace seqcp
