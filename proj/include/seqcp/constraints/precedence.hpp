#pragma once

#include <vector>

#include "seqcp/engine/solver.hpp"

namespace seqcp {

/// The nodes of `order` that are visited appear in that order.
class Precedence : public Propagator {
public:
    Precedence(Solver& s, SeqVar& seq, std::vector<int> order)
        : Propagator(s), seq_(seq), order_(std::move(order)), rank_(seq.size(), -1) {
        seq.subscribe(this);
    }

    void propagate() override {
        check_members();
        confine_insertables();
    }

private:
    void check_members() {
        int r = 0;
        for (int v = seq_.alpha();; v = seq_.next(v)) {
            rank_[v] = r++;
            if (v == seq_.omega()) break;
        }
        int last = -1;
        for (int v : order_) {
            if (!seq_.is_member(v)) continue;
            if (rank_[v] < last) fail();
            last = rank_[v];
        }
    }

    // Each insertable node of the order goes between its closest member
    // neighbours in the order.
    void confine_insertables() {
        queue_.clear();
        int vi = seq_.alpha();
        auto flush = [&](int vk) {
            for (int vj : queue_) {
                seq_.not_between(seq_.alpha(), vj, vi);
                seq_.not_between(vk, vj, seq_.omega());
            }
            queue_.clear();
            vi = vk;
        };
        for (int vk : order_) {
            if (seq_.is_insertable(vk))
                queue_.push_back(vk);
            else if (seq_.is_member(vk))
                flush(vk);
        }
        flush(seq_.omega());
    }

    SeqVar& seq_;
    std::vector<int> order_;
    std::vector<int> rank_;
    std::vector<int> queue_;
};

}  // namespace seqcp
