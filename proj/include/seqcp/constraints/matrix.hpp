#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace seqcp {

/// Dense square matrix of integer travel costs.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(int n, std::int64_t fill = 0) : n_(n), d_(static_cast<std::size_t>(n) * n, fill) {}
    DistanceMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : n_(static_cast<int>(rows.size())) {
        d_.reserve(rows.size() * rows.size());
        for (auto& r : rows) {
            if (r.size() != rows.size()) throw std::invalid_argument("distance matrix must be square");
            d_.insert(d_.end(), r.begin(), r.end());
        }
    }

    int size() const { return n_; }
    std::int64_t operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    std::int64_t& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }

    /// No (i, j, k) with d(i,k) > d(i,j) + d(j,k).
    bool satisfies_triangle_inequality() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k)
                    if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k)) return false;
        return true;
    }

    /// Floyd-Warshall closure; returns the number of entries lowered.
    int close_metric() {
        int changed = 0;
        for (int j = 0; j < n_; ++j)
            for (int i = 0; i < n_; ++i)
                for (int k = 0; k < n_; ++k)
                    if ((*this)(i, j) + (*this)(j, k) < (*this)(i, k)) {
                        (*this)(i, k) = (*this)(i, j) + (*this)(j, k);
                        ++changed;
                    }
        return changed;
    }

private:
    int n_ = 0;
    std::vector<std::int64_t> d_;
};

}  // namespace seqcp
