#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "seqcp/constraints/precedence.hpp"
#include "seqcp/engine/int_constraints.hpp"
#include "seqcp/engine/solver.hpp"

namespace seqcp {

struct Activity {
    int start;
    int end;
    std::int64_t load;
};

/// Load at every visit stays within capacity, where activity i is running
/// from its start (inclusive) to its end (exclusive). Post it through
/// post_cumulative(), which adds the same-visit and start-before-end parts.
class Cumulative : public Propagator {
public:
    Cumulative(Solver& s, SeqVar& seq, std::vector<Activity> acts, std::int64_t capacity)
        : Propagator(s),
          seq_(seq),
          acts_(std::move(acts)),
          capacity_(capacity),
          before_(seq.size()),
          at_(seq.size()),
          after_(seq.size()),
          spot_(acts_.size(), -1) {
        for (const auto& a : acts_) {
            if (a.start == a.end) throw std::invalid_argument("activity start and end must differ");
            if (a.load < 0) throw std::invalid_argument("activity load must be non-negative");
        }
        seq.subscribe(this);
    }

    void propagate() override {
        build_profile();
        for (std::size_t i = 0; i < acts_.size(); ++i) {
            const auto& a = acts_[i];
            const bool s_in = seq_.is_member(a.start);
            const bool e_in = seq_.is_member(a.end);
            // A cascade may have moved things since the profile was built;
            // the listener has already rescheduled us, so just skip.
            if (s_in && !e_in) {
                if (earliest_end_spot(a) == spot_[i]) filter_end(a, spot_[i]);
            } else if (e_in && !s_in) {
                if (latest_start_spot(a) == spot_[i]) filter_start(a, spot_[i]);
            } else if (!s_in && !e_in) {
                filter_outside(a);
            }
        }
    }

    // Profile entries of the last propagation, indexed by node.
    std::int64_t load_before(int v) const { return before_[v]; }
    std::int64_t load_at(int v) const { return at_[v]; }
    std::int64_t load_after(int v) const { return after_[v]; }

private:
    void add(std::vector<std::int64_t>& slot, int v, std::int64_t l) {
        slot[v] += l;
        if (slot[v] > capacity_) fail();
    }

    // Earliest member u with s <= u after which e can go.
    int earliest_end_spot(const Activity& a) const {
        for (int v = a.start; v != seq_.omega(); v = seq_.next(v))
            if (seq_.can_insert(v, a.end)) return v;
        return -1;
    }

    // Latest member u before e after which s can go.
    int latest_start_spot(const Activity& a) const {
        for (int v = seq_.prev(a.end);; v = seq_.prev(v)) {
            if (seq_.can_insert(v, a.start)) return v;
            if (v == seq_.alpha()) return -1;
        }
    }

    void build_profile() {
        std::fill(before_.begin(), before_.end(), 0);
        std::fill(at_.begin(), at_.end(), 0);
        std::fill(after_.begin(), after_.end(), 0);
        std::fill(spot_.begin(), spot_.end(), -1);
        for (std::size_t i = 0; i < acts_.size(); ++i) {
            const auto& a = acts_[i];
            const bool s_in = seq_.is_member(a.start);
            const bool e_in = seq_.is_member(a.end);
            if (s_in && e_in) {
                if (!seq_.precedes(a.start, a.end)) fail();
                for (int v = a.start; v != a.end; v = seq_.next(v)) {
                    add(at_, v, a.load);
                    add(after_, v, a.load);
                    add(before_, seq_.next(v), a.load);
                }
            } else if (s_in) {
                if (seq_.is_excluded(a.end)) fail();
                const int u = earliest_end_spot(a);
                if (u < 0) fail();
                spot_[i] = u;
                // The end lands right after u: u's visit is loaded, the gap
                // after u only partly.
                for (int v = a.start;; v = seq_.next(v)) {
                    add(at_, v, a.load);
                    if (v == u) break;
                    add(after_, v, a.load);
                    add(before_, seq_.next(v), a.load);
                }
            } else if (e_in) {
                if (seq_.is_excluded(a.start)) fail();
                const int u = latest_start_spot(a);
                if (u < 0) fail();
                spot_[i] = u;
                for (int v = seq_.next(u);; v = seq_.next(v)) {
                    add(before_, v, a.load);
                    if (v == a.end) break;
                    add(at_, v, a.load);
                    add(after_, v, a.load);
                }
            }
        }
    }

    std::int64_t peak(int v) const { return std::max(before_[v], at_[v]); }

    // Start visited, end not yet: cut the end insertions past the first
    // member whose visit cannot carry the load.
    void filter_end(const Activity& a, int u) {
        for (int v = seq_.next(u); v != seq_.omega(); v = seq_.next(v)) {
            if (peak(v) + a.load > capacity_) {
                seq_.not_between(v, a.end, seq_.omega());
                break;
            }
        }
    }

    void filter_start(const Activity& a, int u) {
        for (int v = u; v != seq_.alpha(); v = seq_.prev(v)) {
            if (peak(v) + a.load > capacity_) {
                seq_.not_between(seq_.alpha(), a.start, v);
                break;
            }
        }
    }

    // Neither endpoint visited: every start insertion needs a matching end
    // insertion at or after it with room all the way, and vice versa.
    void filter_outside(const Activity& a) {
        if (!seq_.is_insertable(a.start) || !seq_.is_insertable(a.end)) return;
        const int w = seq_.omega();
        for (int p : seq_.insertions(a.start)) {
            if (!seq_.can_insert(p, a.start)) continue;
            bool ok = false;
            if (after_[p] + a.load <= capacity_) {
                for (int q = p; q != w; q = seq_.next(q)) {
                    if (q != p && peak(q) + a.load > capacity_) break;
                    if (seq_.can_insert(q, a.end) && after_[q] + a.load <= capacity_) {
                        ok = true;
                        break;
                    }
                }
            }
            if (!ok) seq_.not_between(p, a.start, seq_.next(p));
            if (!seq_.is_insertable(a.start) || !seq_.is_insertable(a.end)) return;
        }
        for (int q : seq_.insertions(a.end)) {
            if (!seq_.can_insert(q, a.end)) continue;
            bool ok = false;
            if (after_[q] + a.load <= capacity_) {
                for (int p = q;; p = seq_.prev(p)) {
                    if (p != q && peak(seq_.next(p)) + a.load > capacity_) break;
                    if (seq_.can_insert(p, a.start) && after_[p] + a.load <= capacity_) {
                        ok = true;
                        break;
                    }
                    if (p == seq_.alpha()) break;
                }
            }
            if (!ok) seq_.not_between(q, a.end, seq_.next(q));
            if (!seq_.is_insertable(a.start) || !seq_.is_insertable(a.end)) return;
        }
    }

    SeqVar& seq_;
    std::vector<Activity> acts_;
    std::int64_t capacity_;
    std::vector<std::int64_t> before_;
    std::vector<std::int64_t> at_;
    std::vector<std::int64_t> after_;
    std::vector<int> spot_;  // stand-in for the missing endpoint, per activity
};

/// Cumulative plus, per activity, "start visited <=> end visited" and
/// "start before end".
inline Cumulative& post_cumulative(Solver& s, SeqVar& seq, const std::vector<Activity>& acts, std::int64_t capacity) {
    for (const auto& a : acts) {
        s.post<BoolEqual>(BoolVisitView(seq, a.start), BoolVisitView(seq, a.end));
        s.post<Precedence>(seq, std::vector<int>{a.start, a.end});
    }
    return s.post<Cumulative>(seq, acts, capacity);
}

}  // namespace seqcp
