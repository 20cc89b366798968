#pragma once

#include <cassert>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace seqcp {

/// Undo log for reversible state. Each RevInt records its previous value at
/// most once per level; restoring a level replays the entries in reverse.
class Trail {
public:
    using Level = std::size_t;

    Trail() {
        entries_.reserve(1024);
    }

    Trail(const Trail&) = delete;
    Trail& operator=(const Trail&) = delete;

    /// Opens a checkpoint and returns its id. Ids are stack depths, so a
    /// fresh trail hands out level 0.
    Level saveLevel() {
        marks_.push_back(entries_.size());
        ++stamp_;
        return marks_.size() - 1;
    }

    /// Reverts every trailed location to its value at `level`'s checkpoint and
    /// closes that checkpoint together with all deeper ones.
    void restoreLevel(Level level) {
        if (level >= marks_.size()) {
            std::fprintf(stderr, "seqcp: restoreLevel(%zu) on a trail with %zu open levels\n", level,
                         marks_.size());
            std::abort();
        }
        const std::size_t keep = marks_[level];
        while (entries_.size() > keep) {
            const Entry& e = entries_.back();
            *e.where = e.old;
            entries_.pop_back();
        }
        marks_.resize(level);
        ++stamp_;
    }

    std::size_t depth() const { return marks_.size(); }
    std::size_t size() const { return entries_.size(); }
    std::uint64_t stamp() const { return stamp_; }

    void record(std::int64_t* where, std::int64_t old) { entries_.push_back({where, old}); }

private:
    struct Entry {
        std::int64_t* where;
        std::int64_t old;
    };

    std::vector<Entry> entries_;
    std::vector<std::size_t> marks_;
    // Bumped on every save and restore so that a RevInt knows whether it has
    // already been logged at the current level.
    std::uint64_t stamp_ = 1;
};

/// Trailed integer. Must not be relocated once it has been written under an
/// open level: the trail keeps its address.
class RevInt {
public:
    RevInt() = default;
    RevInt(Trail& trail, std::int64_t value) : trail_(&trail), value_(value) {}

    RevInt(const RevInt&) = delete;
    RevInt& operator=(const RevInt&) = delete;
    RevInt(RevInt&& o) noexcept : trail_(o.trail_), value_(o.value_), stamp_(o.stamp_) {}
    RevInt& operator=(RevInt&& o) noexcept {
        trail_ = o.trail_;
        value_ = o.value_;
        stamp_ = o.stamp_;
        return *this;
    }

    std::int64_t value() const { return value_; }
    operator std::int64_t() const { return value_; }

    void set(std::int64_t v) {
        if (v == value_) return;
        if (stamp_ != trail_->stamp()) {
            trail_->record(&value_, value_);
            stamp_ = trail_->stamp();
        }
        value_ = v;
    }
    void increment() { set(value_ + 1); }
    void decrement() { set(value_ - 1); }

private:
    Trail* trail_ = nullptr;
    std::int64_t value_ = 0;
    std::uint64_t stamp_ = 0;
};

/// Sparse set over {0..n-1}. Removal swaps the element past the size marker,
/// so only the marker needs trailing.
class RevSparseSet {
public:
    RevSparseSet() = default;
    RevSparseSet(Trail& trail, int n, bool full = true) : dense_(n), position_(n), size_(trail, full ? n : 0) {
        for (int i = 0; i < n; ++i) {
            dense_[i] = i;
            position_[i] = i;
        }
    }

    int capacity() const { return static_cast<int>(dense_.size()); }
    int size() const { return static_cast<int>(size_.value()); }
    bool empty() const { return size() == 0; }

    bool contains(int v) const {
        assert(v >= 0 && v < capacity());
        return position_[v] < size();
    }

    /// Returns false when `v` was already absent.
    bool remove(int v) {
        if (!contains(v)) return false;
        const int last = size() - 1;
        swap_positions(position_[v], last);
        size_.set(last);
        return true;
    }

    void clear() { size_.set(0); }

    int operator[](int i) const { return dense_[i]; }
    const int* begin() const { return dense_.data(); }
    const int* end() const { return dense_.data() + size(); }

    std::vector<int> values() const { return {begin(), end()}; }

private:
    void swap_positions(int i, int j) {
        const int a = dense_[i];
        const int b = dense_[j];
        dense_[i] = b;
        dense_[j] = a;
        position_[b] = i;
        position_[a] = j;
    }

    std::vector<int> dense_;
    std::vector<int> position_;
    RevInt size_;
};

enum class NodeStatus { Required, Possible, Excluded };

/// Sparse set split into [required | possible | excluded] by two trailed
/// markers. Nodes only move out of the middle block.
class TriPartition {
public:
    TriPartition(Trail& trail, int n)
        : dense_(n), position_(n), required_end_(trail, 0), excluded_begin_(trail, n) {
        for (int i = 0; i < n; ++i) {
            dense_[i] = i;
            position_[i] = i;
        }
    }

    int size() const { return static_cast<int>(dense_.size()); }

    NodeStatus status(int v) const {
        const int p = position_[v];
        if (p < required_end_.value()) return NodeStatus::Required;
        if (p >= excluded_begin_.value()) return NodeStatus::Excluded;
        return NodeStatus::Possible;
    }
    bool is_required(int v) const { return status(v) == NodeStatus::Required; }
    bool is_possible(int v) const { return status(v) == NodeStatus::Possible; }
    bool is_excluded(int v) const { return status(v) == NodeStatus::Excluded; }

    /// P -> R. Returns false if `v` was not possible.
    bool require(int v) {
        if (!is_possible(v)) return false;
        const int r = static_cast<int>(required_end_.value());
        swap_positions(position_[v], r);
        required_end_.set(r + 1);
        return true;
    }

    /// P -> X. Returns false if `v` was not possible.
    bool exclude(int v) {
        if (!is_possible(v)) return false;
        const int x = static_cast<int>(excluded_begin_.value()) - 1;
        swap_positions(position_[v], x);
        excluded_begin_.set(x);
        return true;
    }

    int n_required() const { return static_cast<int>(required_end_.value()); }
    int n_excluded() const { return size() - static_cast<int>(excluded_begin_.value()); }
    int n_possible() const { return size() - n_required() - n_excluded(); }

    std::vector<int> required() const { return {dense_.begin(), dense_.begin() + n_required()}; }
    std::vector<int> possible() const {
        return {dense_.begin() + n_required(), dense_.begin() + excluded_begin_.value()};
    }
    std::vector<int> excluded() const { return {dense_.begin() + excluded_begin_.value(), dense_.end()}; }

private:
    void swap_positions(int i, int j) {
        const int a = dense_[i];
        const int b = dense_[j];
        dense_[i] = b;
        dense_[j] = a;
        position_[b] = i;
        position_[a] = j;
    }

    std::vector<int> dense_;
    std::vector<int> position_;
    RevInt required_end_;
    RevInt excluded_begin_;
};

}  // namespace seqcp
