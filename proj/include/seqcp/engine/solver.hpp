#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "seqcp/inconsistency.hpp"
#include "seqcp/seqvar/sequence_domain.hpp"
#include "seqcp/state/trail.hpp"

namespace seqcp {

class Solver;

class Propagator {
public:
    explicit Propagator(Solver& solver) : solver_(solver) {}
    virtual ~Propagator() = default;
    Propagator(const Propagator&) = delete;
    Propagator& operator=(const Propagator&) = delete;

    virtual void propagate() = 0;

    Solver& solver() const { return solver_; }

private:
    friend class Solver;
    Solver& solver_;
    bool scheduled_ = false;
};

// Anything propagators can listen to.
class Subscribable {
public:
    void subscribe(Propagator* p) { listeners_.push_back(p); }

protected:
    std::vector<Propagator*> listeners_;
};

/// Interval integer variable.
class IntVar : public Subscribable {
public:
    static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min() / 4;
    static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max() / 4;

    IntVar(Solver& solver, std::int64_t lo, std::int64_t hi, std::string name);

    std::int64_t min() const { return min_.value(); }
    std::int64_t max() const { return max_.value(); }
    bool is_fixed() const { return min() == max(); }
    std::int64_t value() const { return min(); }
    bool contains(std::int64_t v) const { return min() <= v && v <= max(); }
    const std::string& name() const { return name_; }

    void remove_below(std::int64_t v) {
        if (v <= min()) return;
        if (v > max()) fail();
        min_.set(v);
        notify();
    }
    void remove_above(std::int64_t v) {
        if (v >= max()) return;
        if (v < min()) fail();
        max_.set(v);
        notify();
    }
    void assign(std::int64_t v) {
        if (!contains(v)) fail();
        if (is_fixed()) return;
        min_.set(v);
        max_.set(v);
        notify();
    }

private:
    void notify();

    Solver* solver_;
    RevInt min_;
    RevInt max_;
    std::string name_;
};

/// Sequence variable: the domain plus the subscriptions of the propagators
/// watching it. Every successful domain update schedules them.
class SeqVar : public SequenceDomain, public Subscribable {
public:
    SeqVar(Solver& solver, int n, int alpha, int omega);

private:
    Solver* solver_;
};

/// Boolean "is node visited" view over a sequence variable.
///   fixed          <=> node not possible
///   false in dom   <=> node not required
///   true in dom    <=> node not excluded
class BoolVisitView {
public:
    BoolVisitView() = default;
    BoolVisitView(SeqVar& seq, int node) : seq_(&seq), node_(node) {}

    bool is_fixed() const { return !seq_->is_possible(node_); }
    bool contains(bool b) const { return b ? !seq_->is_excluded(node_) : !seq_->is_required(node_); }
    bool is_true() const { return seq_->is_required(node_); }
    bool is_false() const { return seq_->is_excluded(node_); }

    void assign(bool b) {
        if (b)
            seq_->require(node_);
        else
            seq_->exclude(node_);
    }

    void subscribe(Propagator* p) { seq_->subscribe(p); }
    SeqVar& seq() const { return *seq_; }
    int node() const { return node_; }

private:
    SeqVar* seq_ = nullptr;
    int node_ = 0;
};

class Solver {
public:
    Solver() = default;
    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    Trail& trail() { return trail_; }

    IntVar& make_int(std::int64_t lo, std::int64_t hi, std::string name = {}) {
        if (lo > hi) fail();
        return ints_.emplace_back(*this, lo, hi, std::move(name));
    }

    SeqVar& make_seq(int n, int alpha, int omega) {
        seqs_.push_back(std::make_unique<SeqVar>(*this, n, alpha, omega));
        return *seqs_.back();
    }

    /// Builds the propagator, runs it and reaches a fixpoint. Throws
    /// Inconsistency when the model is infeasible at this point.
    template <class P, class... Args>
    P& post(Args&&... args) {
        auto owned = std::make_unique<P>(*this, std::forward<Args>(args)...);
        P& p = *owned;
        props_.push_back(std::move(owned));
        schedule(&p);
        fixpoint();
        return p;
    }

    void schedule(Propagator* p) {
        if (p->scheduled_) return;
        p->scheduled_ = true;
        queue_.push_back(p);
    }

    void fixpoint() {
        try {
            while (!queue_.empty()) {
                Propagator* p = queue_.front();
                queue_.pop_front();
                p->scheduled_ = false;
                ++propagations_;
                p->propagate();
            }
        } catch (const Inconsistency&) {
            clear_queue();
            throw;
        }
    }

    /// Drops pending work after a failure raised outside fixpoint().
    void clear_queue() {
        for (Propagator* p : queue_) p->scheduled_ = false;
        queue_.clear();
    }

    std::size_t n_propagators() const { return props_.size(); }
    std::uint64_t propagations() const { return propagations_; }

private:
    Trail trail_;
    std::deque<Propagator*> queue_;
    std::vector<std::unique_ptr<Propagator>> props_;
    std::deque<IntVar> ints_;
    std::vector<std::unique_ptr<SeqVar>> seqs_;
    std::uint64_t propagations_ = 0;
};

inline IntVar::IntVar(Solver& solver, std::int64_t lo, std::int64_t hi, std::string name)
    : solver_(&solver), min_(solver.trail(), lo), max_(solver.trail(), hi), name_(std::move(name)) {}

inline void IntVar::notify() {
    for (Propagator* p : listeners_) solver_->schedule(p);
}

inline SeqVar::SeqVar(Solver& solver, int n, int alpha, int omega)
    : SequenceDomain(solver.trail(), n, alpha, omega), solver_(&solver) {
    set_listener([this] {
        for (Propagator* p : listeners_) solver_->schedule(p);
    });
}

}  // namespace seqcp
