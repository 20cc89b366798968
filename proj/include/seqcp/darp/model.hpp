#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqcp/constraints/cumulative.hpp"
#include "seqcp/constraints/distance.hpp"
#include "seqcp/constraints/transition_times.hpp"
#include "seqcp/darp/instance.hpp"
#include "seqcp/engine/int_constraints.hpp"
#include "seqcp/search/request_branching.hpp"

namespace seqcp::darp {

/// darp: the full model. pdptw: no ride time or route duration limits.
/// pdp: additionally no time windows.
enum class Variant { Darp, Pdptw, Pdp };

inline Variant parse_variant(const std::string& s) {
    if (s == "darp") return Variant::Darp;
    if (s == "pdptw") return Variant::Pdptw;
    if (s == "pdp") return Variant::Pdp;
    throw std::invalid_argument("unknown variant '" + s + "' (darp, pdptw, pdp)");
}

inline const char* to_string(Variant v) {
    switch (v) {
        case Variant::Darp: return "darp";
        case Variant::Pdptw: return "pdptw";
        case Variant::Pdp: return "pdp";
    }
    return "?";
}

constexpr std::int64_t kDetourWeight = 80;
constexpr std::int64_t kSlackWeight = 1;
constexpr std::int64_t kOpenHorizon = 1'000'000'000'000;  // windows of the pdp variant

/// Score of putting j between i and k: weighted detour minus the time slack
/// left between i and k once j is in.
inline std::int64_t insertion_cost(std::int64_t d_ij, std::int64_t d_jk, std::int64_t d_ik, std::int64_t ub_time_k,
                                   std::int64_t lb_time_i, std::int64_t s_i, std::int64_t s_j) {
    return kDetourWeight * (d_ij + d_jk - d_ik) - kSlackWeight * (ub_time_k - lb_time_i - s_i - d_ij - s_j - d_jk);
}

/// One sequence variable per vehicle over all nodes, plus per-node visit
/// times. Throws Inconsistency when the root propagation fails.
class Model {
public:
    explicit Model(Instance inst, Variant variant = Variant::Darp) : inst_(std::move(inst)), variant_(variant) {
        const int n = inst_.n();
        for (int v = 0; v < n; ++v) {
            const auto& st = inst_.site[v];
            if (variant_ == Variant::Pdp)
                time_.push_back(&s_.make_int(0, kOpenHorizon));
            else
                time_.push_back(&s_.make_int(st.open, st.close));
            service_.push_back(st.service);
        }
        for (int r = 0; r < inst_.R; ++r) requests_.push_back({inst_.pick(r), inst_.drop(r)});

        for (int k = 0; k < inst_.K; ++k) {
            SeqVar& q = s_.make_seq(n, inst_.start(k), inst_.end(k));
            for (int o = 0; o < inst_.K; ++o) {
                if (o == k) continue;
                q.exclude(inst_.start(o));
                q.exclude(inst_.end(o));
            }
            routes_.push_back(&q);
        }
        // No route is longer than leaving every node by its longest edge.
        std::int64_t longest = 0;
        for (int i = 0; i < n; ++i) {
            std::int64_t m = 0;
            for (int j = 0; j < n; ++j) m = std::max(m, inst_.d(i, j));
            longest += m;
        }
        std::vector<Activity> acts;
        for (int r = 0; r < inst_.R; ++r) acts.push_back({inst_.pick(r), inst_.drop(r), inst_.site[inst_.pick(r)].load});
        for (int k = 0; k < inst_.K; ++k) {
            SeqVar& q = *routes_[k];
            dist_.push_back(&s_.make_int(0, longest));
            s_.post<Distance>(q, inst_.d, *dist_[k]);
            s_.post<TransitionTimes>(q, time_, service_, inst_.d);
            post_cumulative(s_, q, acts, inst_.capacity);
        }
        // Every request node is served by exactly one vehicle.
        for (int v = inst_.K; v < inst_.K + 2 * inst_.R; ++v) {
            std::vector<BoolVisitView> views;
            for (SeqVar* q : routes_) views.emplace_back(*q, v);
            s_.post<BoolSum>(views, 1, 1);
        }
        for (const Request& r : requests_) {
            // drop no earlier than a direct trip allows (triangle inequality)
            s_.post<LessOrEqual>(*time_[r.pick], *time_[r.drop], service_[r.pick] + inst_.d(r.pick, r.drop));
            if (variant_ == Variant::Darp)
                s_.post<LessOrEqual>(*time_[r.drop], *time_[r.pick], -(service_[r.pick] + inst_.max_ride));
        }
        if (variant_ == Variant::Darp)
            for (int k = 0; k < inst_.K; ++k)
                s_.post<LessOrEqual>(*time_[inst_.end(k)], *time_[inst_.start(k)], -inst_.max_duration);
        objective_ = &s_.make_int(0, longest * inst_.K);
        s_.post<SumEquals>(dist_, *objective_);
    }

    Model(const Model&) = delete;
    Model& operator=(const Model&) = delete;

    const Instance& instance() const { return inst_; }
    Variant variant() const { return variant_; }
    Solver& solver() { return s_; }
    const std::vector<SeqVar*>& routes() const { return routes_; }
    const std::vector<Request>& requests() const { return requests_; }
    IntVar& time(int v) { return *time_[v]; }
    IntVar& distance(int k) { return *dist_[k]; }
    IntVar& objective() { return *objective_; }

    /// Heuristic score on the current domains (before the decision).
    std::int64_t insertion_cost(int, int vi, int vj, int vk) const {
        return darp::insertion_cost(inst_.d(vi, vj), inst_.d(vj, vk), inst_.d(vi, vk), time_[vk]->max(),
                                    time_[vi]->min(), service_[vi], service_[vj]);
    }

    Branching branching() {
        return request_branching(routes_, requests_,
                                 [this](int k, int vi, int vj, int vk) { return insertion_cost(k, vi, vj, vk); });
    }

private:
    Instance inst_;
    Variant variant_;
    Solver s_;
    std::vector<SeqVar*> routes_;
    std::vector<Request> requests_;
    std::vector<IntVar*> time_;
    std::vector<std::int64_t> service_;
    std::vector<IntVar*> dist_;
    IntVar* objective_ = nullptr;
};

}  // namespace seqcp::darp
