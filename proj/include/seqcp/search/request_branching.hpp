#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "seqcp/engine/dfs.hpp"

namespace seqcp {

struct Request {
    int pick;
    int drop;
};

/// Heuristic score for putting vj between vi and vk on route `route`.
using InsertionCost = std::function<std::int64_t(int route, int vi, int vj, int vk)>;

namespace detail {

inline bool visited(const std::vector<SeqVar*>& routes, int v) {
    return std::any_of(routes.begin(), routes.end(), [v](const SeqVar* q) { return q->is_member(v); });
}

}  // namespace detail

/// Chooses the request with the fewest (pickup x drop) insertion pairs over
/// all routes and branches on every way of inserting both of its visits,
/// cheapest first. Ties in the choice go to the lowest request index and the
/// sort is stable. A request left without any insertion yields a single
/// failing decision, so the search backtracks.
inline Branching request_branching(std::vector<SeqVar*> routes, std::vector<Request> requests, InsertionCost cost) {
    return [routes = std::move(routes), requests = std::move(requests), cost = std::move(cost)]() {
        std::vector<Decision> out;
        int chosen = -1;
        std::int64_t chosen_score = std::numeric_limits<std::int64_t>::max();
        for (int r = 0; r < static_cast<int>(requests.size()); ++r) {
            const Request& req = requests[r];
            if (detail::visited(routes, req.pick) && detail::visited(routes, req.drop)) continue;
            std::int64_t score = 0;
            for (const SeqVar* q : routes) {
                const std::int64_t np = q->is_member(req.pick) ? 1 : q->n_insert(req.pick);
                const std::int64_t nd = q->is_member(req.drop) ? 1 : q->n_insert(req.drop);
                score += np * nd;
            }
            if (score < chosen_score) {
                chosen = r;
                chosen_score = score;
            }
        }
        if (chosen < 0) {
            if (std::all_of(routes.begin(), routes.end(), [](const SeqVar* q) { return q->is_fixed(); })) return out;
            out.push_back({[] { fail(); }, 0});
            return out;
        }

        const int pick = requests[chosen].pick;
        const int drop = requests[chosen].drop;
        for (int k = 0; k < static_cast<int>(routes.size()); ++k) {
            SeqVar* q = routes[k];
            if (q->is_member(pick)) {
                // Only the drop is left: it goes somewhere after the pickup.
                std::vector<int> spots = q->insertions_after(drop, pick);
                if (q->can_insert(pick, drop)) spots.insert(spots.begin(), pick);
                for (int pm : spots)
                    out.push_back({[q, pm, drop] { q->insert(pm, drop); }, cost(k, pm, drop, q->next(pm))});
                continue;
            }
            if (q->is_member(drop)) {
                // Propagation placed the drop first: the pickup goes before it.
                for (int pp : q->insertions(pick))
                    if (q->precedes(pp, drop))
                        out.push_back({[q, pp, pick] { q->insert(pp, pick); }, cost(k, pp, pick, q->next(pp))});
                continue;
            }
            for (int pp : q->insertions(pick)) {
                const std::int64_t pick_cost = cost(k, pp, pick, q->next(pp));
                // Drop right after the pickup: it sits in the same gap.
                if (q->can_insert(pp, drop)) {
                    const std::int64_t c = pick_cost + cost(k, pick, drop, q->next(pp));
                    out.push_back({[q, pp, pick, drop] {
                                       q->insert(pp, pick);
                                       q->insert(pick, drop);
                                   },
                                   c});
                }
                for (int pm : q->insertions_after(drop, pp)) {
                    const std::int64_t c = pick_cost + cost(k, pm, drop, q->next(pm));
                    out.push_back({[q, pp, pm, pick, drop] {
                                       q->insert(pp, pick);
                                       q->insert(pm, drop);
                                   },
                                   c});
                }
            }
        }
        if (out.empty()) {
            out.push_back({[] { fail(); }, 0});
            return out;
        }
        std::stable_sort(out.begin(), out.end(), [](const Decision& a, const Decision& b) { return a.score < b.score; });
        return out;
    };
}

}  // namespace seqcp
