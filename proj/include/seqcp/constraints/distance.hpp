#pragma once

#include <cstdint>
#include <vector>

#include "seqcp/constraints/matrix.hpp"
#include "seqcp/engine/solver.hpp"

namespace seqcp {

/// dist == total length of the route under d.
class Distance : public Propagator {
public:
    Distance(Solver& s, SeqVar& seq, const DistanceMatrix& d, IntVar& dist) : Propagator(s), seq_(seq), d_(d), dist_(dist) {
        seq.subscribe(this);
        dist.subscribe(this);
    }

    void propagate() override {
        const std::int64_t length = partial_length();
        if (seq_.is_fixed()) {
            dist_.assign(length);
            return;
        }
        dist_.remove_below(length);
        const std::int64_t max_detour = dist_.max() - length;
        for (int vj : seq_.insertable()) {
            for (int vi : seq_.insertions(vj)) {
                if (!seq_.can_insert(vi, vj)) continue;  // gone through an earlier cascade
                const int vk = seq_.next(vi);
                if (d_(vi, vj) + d_(vj, vk) - d_(vi, vk) > max_detour) seq_.not_between(vi, vj, vk);
            }
        }
    }

    std::int64_t partial_length() const {
        std::int64_t length = 0;
        for (int v = seq_.alpha(); v != seq_.omega(); v = seq_.next(v)) length += d_(v, seq_.next(v));
        return length;
    }

private:
    SeqVar& seq_;
    const DistanceMatrix& d_;
    IntVar& dist_;
};

}  // namespace seqcp
