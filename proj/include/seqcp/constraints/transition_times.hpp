#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "seqcp/constraints/matrix.hpp"
#include "seqcp/engine/solver.hpp"

namespace seqcp {

/// For consecutive visits i -> j: start[i] + service[i] + d(i,j) <= start[j].
/// Unvisited nodes keep their start unconstrained.
class TransitionTimes : public Propagator {
public:
    TransitionTimes(Solver& s, SeqVar& seq, std::vector<IntVar*> start, std::vector<std::int64_t> service,
                    const DistanceMatrix& d)
        : Propagator(s), seq_(seq), start_(std::move(start)), service_(std::move(service)), d_(d) {
        seq.subscribe(this);
        for (IntVar* x : start_) x->subscribe(this);
    }

    void propagate() override {
        bound_members();
        filter_insertions();
        bound_required();
    }

private:
    std::int64_t earliest_after(int vi, int vj) const { return start_[vi]->min() + service_[vi] + d_(vi, vj); }
    std::int64_t latest_before(int vj, int vk) const { return start_[vk]->max() - service_[vj] - d_(vj, vk); }

    void bound_members() {
        const int a = seq_.alpha();
        const int w = seq_.omega();
        for (int v = a; v != w; v = seq_.next(v)) start_[seq_.next(v)]->remove_below(earliest_after(v, seq_.next(v)));
        for (int v = w; v != a; v = seq_.prev(v)) start_[seq_.prev(v)]->remove_above(latest_before(seq_.prev(v), v));
    }

    void filter_insertions() {
        for (int vj : seq_.insertable()) {
            for (int vi : seq_.insertions(vj)) {
                if (!seq_.can_insert(vi, vj)) continue;
                const int vk = seq_.next(vi);
                const std::int64_t ea = earliest_after(vi, vj);
                const std::int64_t la = latest_before(vj, vk);
                if (ea > start_[vj]->max() || la < start_[vj]->min() || ea > la) seq_.not_between(vi, vj, vk);
            }
        }
    }

    void bound_required() {
        for (int vj : seq_.insertable()) {
            if (!seq_.is_required(vj)) continue;
            std::int64_t lo = std::numeric_limits<std::int64_t>::max();
            std::int64_t hi = std::numeric_limits<std::int64_t>::min();
            for (int vi : seq_.insertions(vj)) {
                lo = std::min(lo, earliest_after(vi, vj));
                hi = std::max(hi, latest_before(vj, seq_.next(vi)));
            }
            if (lo == std::numeric_limits<std::int64_t>::max()) continue;  // inserted by a cascade meanwhile
            start_[vj]->remove_below(lo);
            start_[vj]->remove_above(hi);
        }
    }

    SeqVar& seq_;
    std::vector<IntVar*> start_;
    std::vector<std::int64_t> service_;
    const DistanceMatrix& d_;
};

}  // namespace seqcp
