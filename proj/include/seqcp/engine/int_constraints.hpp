#pragma once

#include <cstdint>
#include <vector>

#include "seqcp/engine/solver.hpp"

namespace seqcp {

/// x + offset <= y
class LessOrEqual : public Propagator {
public:
    LessOrEqual(Solver& s, IntVar& x, IntVar& y, std::int64_t offset = 0) : Propagator(s), x_(x), y_(y), offset_(offset) {
        x.subscribe(this);
        y.subscribe(this);
    }

    void propagate() override {
        y_.remove_below(x_.min() + offset_);
        x_.remove_above(y_.max() - offset_);
    }

private:
    IntVar& x_;
    IntVar& y_;
    std::int64_t offset_;
};

/// sum(xs) == total, bounds reasoning.
class SumEquals : public Propagator {
public:
    SumEquals(Solver& s, std::vector<IntVar*> xs, IntVar& total) : Propagator(s), xs_(std::move(xs)), total_(total) {
        for (IntVar* x : xs_) x->subscribe(this);
        total.subscribe(this);
    }

    void propagate() override {
        std::int64_t lo = 0;
        std::int64_t hi = 0;
        for (IntVar* x : xs_) {
            lo += x->min();
            hi += x->max();
        }
        total_.remove_below(lo);
        total_.remove_above(hi);
        for (IntVar* x : xs_) {
            // each x is pinned by what the others leave over
            x->remove_below(total_.min() - (hi - x->max()));
            x->remove_above(total_.max() - (lo - x->min()));
        }
    }

private:
    std::vector<IntVar*> xs_;
    IntVar& total_;
};

/// lo <= number of true views <= hi
class BoolSum : public Propagator {
public:
    BoolSum(Solver& s, std::vector<BoolVisitView> views, int lo, int hi)
        : Propagator(s), views_(std::move(views)), lo_(lo), hi_(hi) {
        for (auto& v : views_) v.subscribe(this);
    }

    void propagate() override {
        int n_true = 0;
        int n_false = 0;
        for (const auto& v : views_) {
            n_true += v.is_true();
            n_false += v.is_false();
        }
        const int n = static_cast<int>(views_.size());
        if (n_true > hi_ || n - n_false < lo_) fail();
        if (n_true == hi_) {
            for (auto& v : views_)
                if (!v.is_fixed()) v.assign(false);
        } else if (n - n_false == lo_) {
            for (auto& v : views_)
                if (!v.is_fixed()) v.assign(true);
        }
    }

private:
    std::vector<BoolVisitView> views_;
    int lo_;
    int hi_;
};

/// a == b over two visit views.
class BoolEqual : public Propagator {
public:
    BoolEqual(Solver& s, BoolVisitView a, BoolVisitView b) : Propagator(s), a_(a), b_(b) {
        a_.subscribe(this);
        if (&b_.seq() != &a_.seq()) b_.subscribe(this);
    }

    void propagate() override {
        if (a_.is_fixed()) b_.assign(a_.is_true());
        if (b_.is_fixed()) a_.assign(b_.is_true());
    }

private:
    BoolVisitView a_;
    BoolVisitView b_;
};

}  // namespace seqcp
