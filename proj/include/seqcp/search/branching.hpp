#pragma once

#include <utility>
#include <vector>

#include "seqcp/engine/dfs.hpp"

namespace seqcp {

/// First-fail node choice over several sequence variables: the insertable
/// node with the fewest insertions; ties go to the lowest (variable, node).
/// Returns {-1, -1} when every variable is fixed.
inline std::pair<int, int> first_fail_node(const std::vector<SeqVar*>& seqs) {
    std::pair<int, int> best{-1, -1};
    int best_n = 0;
    for (int k = 0; k < static_cast<int>(seqs.size()); ++k) {
        for (int v : seqs[k]->insertable()) {
            const int n = seqs[k]->n_insert(v);
            if (best.first < 0 || n < best_n || (n == best_n && k == best.first && v < best.second)) {
                best = {k, v};
                best_n = n;
            }
        }
    }
    return best;
}

/// Select a node, then branch on each of its insertion points. A node that
/// is not required gets one more branch, excluding it, so optional nodes
/// stay complete; required nodes never get it.
inline Branching two_step_branching(std::vector<SeqVar*> seqs) {
    return [seqs = std::move(seqs)]() {
        std::vector<Decision> out;
        auto [k, v] = first_fail_node(seqs);
        if (k < 0) return out;
        SeqVar* q = seqs[k];
        for (int p : q->insertions(v)) out.push_back({[q, p, v] { q->insert(p, v); }, 0});
        if (!q->is_required(v)) out.push_back({[q, v] { q->exclude(v); }, 0});
        return out;
    };
}

/// Same node choice, then insert at the first insertion point on the left
/// and forbid exactly that insertion on the right.
inline Branching binary_branching(std::vector<SeqVar*> seqs) {
    return [seqs = std::move(seqs)]() {
        std::vector<Decision> out;
        auto [k, v] = first_fail_node(seqs);
        if (k < 0) return out;
        SeqVar* q = seqs[k];
        int p = -1;
        for (int m = q->alpha(); m != q->omega(); m = q->next(m))
            if (q->can_insert(m, v)) {
                p = m;
                break;
            }
        const int succ = q->next(p);
        out.push_back({[q, p, v] { q->insert(p, v); }, 0});
        out.push_back({[q, p, v, succ] { q->not_between(p, v, succ); }, 1});
        return out;
    };
}

}  // namespace seqcp
