#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqcp/inconsistency.hpp"
#include "seqcp/state/trail.hpp"

namespace seqcp {

/// Reversible O(n^2) domain of an insertion-based sequence variable.
///
/// The partial sequence is a circular successor/predecessor array through
/// alpha and omega (non-members are self-loops). The edge graph keeps, for
/// every member v_i and insertable v_j, the edge (v_i, v_j) iff v_j may still
/// be placed directly after v_i, paired with (v_j, succ(v_i)). Insertable
/// nodes form a clique; excluded nodes have no edge at all.
///
/// Updates that empty the domain throw Inconsistency and may leave the
/// structure half-updated; callers restore the trail.
class SequenceDomain {
public:
    SequenceDomain(Trail& trail, int n, int alpha, int omega)
        : n_(n), alpha_(alpha), omega_(omega), status_(trail, n < 0 ? 0 : n), insertable_(trail, n < 0 ? 0 : n) {
        if (n < 2) throw std::invalid_argument("sequence domain needs at least two nodes");
        if (alpha == omega || alpha < 0 || omega < 0 || alpha >= n || omega >= n)
            throw std::invalid_argument("alpha and omega must be distinct valid nodes");

        succ_.reserve(n);
        pred_.reserve(n);
        n_insert_.reserve(n);
        in_.reserve(n);
        out_.reserve(n);
        for (int v = 0; v < n; ++v) {
            succ_.emplace_back(trail, v);
            pred_.emplace_back(trail, v);
            n_insert_.emplace_back(trail, 1);
            in_.emplace_back(trail, n, true);
            out_.emplace_back(trail, n, true);
        }
        succ_[alpha].set(omega);
        pred_[omega].set(alpha);
        succ_[omega].set(alpha);
        pred_[alpha].set(omega);
        n_member_ = RevInt(trail, 2);

        // Start from the complete graph and cut what the initial domain forbids.
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const bool keep = (i != omega && j != alpha && i != j) || (i == omega && j == alpha);
                if (!keep) {
                    out_[i].remove(j);
                    in_[j].remove(i);
                }
            }
        }
        insertable_.remove(alpha);
        insertable_.remove(omega);
        n_insert_[alpha].set(0);
        n_insert_[omega].set(0);
        status_.require(alpha);
        status_.require(omega);
    }

    SequenceDomain(const SequenceDomain&) = delete;
    SequenceDomain& operator=(const SequenceDomain&) = delete;

    int size() const { return n_; }
    int alpha() const { return alpha_; }
    int omega() const { return omega_; }

    /// Called after every successful update that changed the domain.
    void set_listener(std::function<void()> on_change) { on_change_ = std::move(on_change); }

    // ---- queries -------------------------------------------------------

    /// No insertion remains. Required nodes outside the partial sequence keep
    /// at least two insertions, so an empty I means everything required is in.
    bool is_fixed() const { return insertable_.empty(); }

    bool is_member(int v) const { return succ_[v].value() != v; }
    bool is_required(int v) const { return status_.is_required(v); }
    bool is_excluded(int v) const { return status_.is_excluded(v); }
    bool is_possible(int v) const { return status_.is_possible(v); }
    bool is_insertable(int v) const { return insertable_.contains(v); }

    int next(int v) const { return static_cast<int>(succ_[v].value()); }
    int prev(int v) const { return static_cast<int>(pred_[v].value()); }

    int n_insert(int v) const { return static_cast<int>(n_insert_[v].value()); }
    int n_member() const { return static_cast<int>(n_member_.value()); }

    /// Members from alpha to omega, in order.
    std::vector<int> members() const {
        std::vector<int> seq;
        seq.reserve(n_member());
        for (int v = alpha_;; v = next(v)) {
            seq.push_back(v);
            if (v == omega_) break;
        }
        return seq;
    }

    std::vector<int> required() const { return status_.required(); }
    std::vector<int> excluded() const { return status_.excluded(); }
    std::vector<int> possible() const { return status_.possible(); }
    std::vector<int> insertable() const { return insertable_.values(); }
    int n_insertable() const { return insertable_.size(); }

    const RevSparseSet& edges_to(int v) const { return in_[v]; }
    const RevSparseSet& edges_from(int v) const { return out_[v]; }
    bool has_edge(int from, int to) const { return out_[from].contains(to); }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (const auto& s : out_) e += static_cast<std::size_t>(s.size());
        return e;
    }

    /// (vi, vj) is a feasible insertion: vi member, vj insertable, edge present.
    bool can_insert(int vi, int vj) const { return is_member(vi) && is_insertable(vj) && has_edge(vi, vj); }

    /// Members after which `vj` can be inserted.
    std::vector<int> insertions(int vj) const {
        std::vector<int> result;
        if (!is_insertable(vj)) return result;
        result.reserve(n_insert(vj));
        if (in_[vj].size() <= n_member()) {
            for (int vi : in_[vj])
                if (is_member(vi)) result.push_back(vi);
        } else {
            for (int vi = alpha_; vi != omega_; vi = next(vi))
                if (has_edge(vi, vj)) result.push_back(vi);
        }
        return result;
    }

    /// Members strictly after `p` after which `vj` can be inserted. `p` itself
    /// is never reported.
    std::vector<int> insertions_after(int vj, int p) const {
        std::vector<int> result;
        if (!is_insertable(vj) || !is_member(p)) return result;
        for (int vi = next(p); vi != alpha_ && vi != omega_; vi = next(vi))
            if (has_edge(vi, vj)) result.push_back(vi);
        return result;
    }

    /// a precedes-or-equals b in the partial sequence. Both must be members.
    bool precedes_or_equal(int a, int b) const {
        for (int v = a;; v = next(v)) {
            if (v == b) return true;
            if (v == omega_) return false;
        }
    }
    bool precedes(int a, int b) const { return a != b && precedes_or_equal(a, b); }

    // ---- updates -------------------------------------------------------

    /// Inserts v2 directly after member v1. Inserting a member that already
    /// lies after v1 is a no-op.
    void insert(int v1, int v2) {
        if (is_member(v2)) {
            if (is_member(v1) && precedes_or_equal(v1, v2)) return;
            fail();
        }
        if (!can_insert(v1, v2)) fail();
        insert_feasible(v1, v2);
        notify();
    }

    void insert_at_end(int v) { insert(prev(omega_), v); }

    /// Forbids v2 from appearing between members v1 and v3. No filtering when
    /// v3 precedes or equals v1. A member v2 outside [v1, v3) is left alone.
    void not_between(int v1, int v2, int v3) {
        if (!is_member(v1) || !is_member(v3))
            throw std::logic_error("not_between extremities must be members of the partial sequence");
        if (is_excluded(v2)) return;
        if (is_member(v2)) {
            if (v2 != v1 && v2 != v3 && precedes(v1, v2) && precedes(v2, v3)) fail();
            return;
        }
        if (v1 == v3 || !precedes(v1, v3)) return;

        bool changed = false;
        for (int vi = v1; vi != v3; vi = next(vi)) {
            if (!can_insert(vi, v2)) continue;
            const int vj = next(vi);
            remove_edge(vi, v2);
            remove_edge(v2, vj);
            n_insert_[v2].decrement();
            changed = true;
            if (n_insert_[v2].value() == 0) {
                if (is_required(v2)) fail();
                status_.exclude(v2);
                insertable_.remove(v2);
                clear_edges(v2);
                notify();
                return;
            }
        }
        if (n_insert_[v2].value() == 1 && is_required(v2)) insert_sole(v2);
        if (changed) notify();
    }

    void require(int v) {
        if (is_excluded(v)) fail();
        if (is_required(v)) return;
        status_.require(v);
        if (is_insertable(v) && n_insert(v) == 1) insert_sole(v);
        notify();
    }

    void exclude(int v) {
        if (is_excluded(v)) return;
        if (is_required(v)) fail();
        status_.exclude(v);
        insertable_.remove(v);
        n_insert_[v].set(0);
        clear_edges(v);
        notify();
    }

private:
    void notify() {
        if (on_change_) on_change_();
    }

    void remove_edge(int from, int to) {
        out_[from].remove(to);
        in_[to].remove(from);
    }

    void clear_edges(int v) {
        for (int u : out_[v]) in_[u].remove(v);
        for (int u : in_[v]) out_[u].remove(v);
        out_[v].clear();
        in_[v].clear();
    }

    void insert_sole(int v) {
        const auto spots = insertions(v);
        insert_feasible(spots.front(), v);
    }

    // Insertion of a feasible pair, line for line with the reference update:
    // mark v2, drop member edges into v2, propagate forbidden insertions from
    // v1 to v2, count new insertions, then relink.
    void insert_feasible(int v1, int v2) {
        status_.require(v2);
        insertable_.remove(v2);
        n_insert_[v2].set(0);
        n_member_.increment();
        const int v3 = next(v1);

        scratch_.assign(in_[v2].begin(), in_[v2].end());
        for (int vi : scratch_) {
            if (is_member(vi)) {
                if (vi != v1) {
                    remove_edge(vi, v2);
                    const int vj = next(vi);
                    remove_edge(v2, vj);
                }
            } else if (!can_insert(v1, vi)) {
                remove_edge(v2, vi);
                remove_edge(vi, v2);
            } else {
                n_insert_[vi].increment();
            }
        }
        succ_[v1].set(v2);
        succ_[v2].set(v3);
        pred_[v3].set(v2);
        pred_[v2].set(v1);
        remove_edge(v1, v3);
    }

    int n_;
    int alpha_;
    int omega_;
    std::vector<RevInt> succ_;
    std::vector<RevInt> pred_;
    std::vector<RevInt> n_insert_;
    std::vector<RevSparseSet> in_;
    std::vector<RevSparseSet> out_;
    RevInt n_member_;
    TriPartition status_;
    RevSparseSet insertable_;
    std::vector<int> scratch_;
    std::function<void()> on_change_;
};

}  // namespace seqcp
