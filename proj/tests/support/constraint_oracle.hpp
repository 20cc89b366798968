#pragma once

// Brute-force soundness check for the sequence constraints: enumerate the
// domain before posting, filter by the constraint's definition, and demand
// that every surviving sequence is still in the domain after the fixpoint.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "seqcp/constraints/cumulative.hpp"
#include "seqcp/constraints/distance.hpp"
#include "seqcp/constraints/precedence.hpp"
#include "seqcp/constraints/transition_times.hpp"
#include "seqcp/seqvar/inspect.hpp"
#include "support/domain_scripts.hpp"

namespace soundness {

enum class Kind { Distance, TransitionTimes, Precedence, Cumulative };

inline const char* name(Kind k) {
    switch (k) {
        case Kind::Distance: return "Distance";
        case Kind::TransitionTimes: return "TransitionTimes";
        case Kind::Precedence: return "Precedence";
        case Kind::Cumulative: return "Cumulative";
    }
    return "?";
}

inline int pos(const std::vector<int>& seq, int v) {
    auto it = std::find(seq.begin(), seq.end(), v);
    return it == seq.end() ? -1 : static_cast<int>(it - seq.begin());
}

inline std::int64_t length(const std::vector<int>& seq, const seqcp::DistanceMatrix& d) {
    std::int64_t len = 0;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) len += d(seq[i], seq[i + 1]);
    return len;
}

// Manhattan distances between random grid points: always a metric.
inline seqcp::DistanceMatrix random_metric(std::mt19937_64& rng, int n, int span) {
    std::vector<std::pair<int, int>> pt(n);
    for (auto& p : pt) p = {scripts::uniform(rng, 0, span), scripts::uniform(rng, 0, span)};
    seqcp::DistanceMatrix d(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = std::abs(pt[i].first - pt[j].first) + std::abs(pt[i].second - pt[j].second);
    return d;
}

struct Window {
    std::int64_t lo, hi;
};

inline bool schedulable(const std::vector<int>& seq, const std::vector<Window>& w, const std::vector<std::int64_t>& service,
                        const seqcp::DistanceMatrix& d) {
    std::int64_t t = w[seq[0]].lo;
    if (t > w[seq[0]].hi) return false;
    for (std::size_t k = 1; k < seq.size(); ++k) {
        t = std::max(w[seq[k]].lo, t + service[seq[k - 1]] + d(seq[k - 1], seq[k]));
        if (t > w[seq[k]].hi) return false;
    }
    return true;
}

inline bool ordered(const std::vector<int>& seq, const std::vector<int>& order) {
    int last = -1;
    for (int v : order) {
        int p = pos(seq, v);
        if (p < 0) continue;
        if (p < last) return false;
        last = p;
    }
    return true;
}

inline bool within_capacity(const std::vector<int>& seq, const std::vector<seqcp::Activity>& acts, std::int64_t c) {
    std::vector<std::int64_t> load(seq.size(), 0);
    for (const auto& a : acts) {
        int ps = pos(seq, a.start), pe = pos(seq, a.end);
        if ((ps < 0) != (pe < 0)) return false;
        if (ps < 0) continue;
        if (ps > pe) return false;
        for (int k = ps; k < pe; ++k) load[k] += a.load;
    }
    return std::all_of(load.begin(), load.end(), [&](std::int64_t l) { return l <= c; });
}

struct Outcome {
    std::string error;     // empty when sound
    std::size_t before = 0;
    std::size_t satisfying = 0;
    std::size_t after = 0;
};

inline std::string show(const std::vector<int>& seq) {
    std::ostringstream os;
    for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? "." : "") << seq[i];
    return os.str();
}

/// One random instance of the given constraint over at most max_n nodes.
inline Outcome run_case(std::mt19937_64& rng, Kind kind, int max_n = 6) {
    using namespace seqcp;
    const int n = scripts::uniform(rng, 3, max_n);
    Solver s;
    SeqVar& q = s.make_seq(n, 0, n - 1);
    try {
        const int k = scripts::uniform(rng, 0, 3);
        for (int i = 0; i < k; ++i) scripts::apply(scripts::random_op(rng, q), q);
    } catch (const Inconsistency&) {
        return {};
    }
    const auto before = enumerate(q);
    std::vector<std::vector<int>> satisfying;
    std::ostringstream desc;

    // Everything posted must outlive the solver's propagators.
    DistanceMatrix d = random_metric(rng, n, 6);
    std::vector<Window> win(n);
    std::vector<std::int64_t> service(n, 0);
    std::vector<int> order;
    std::vector<Activity> acts;
    std::int64_t cap = 0;

    auto keep = [&](auto pred) {
        for (const auto& seq : before)
            if (pred(seq)) satisfying.push_back(seq);
    };

    try {
        switch (kind) {
            case Kind::Distance: {
                std::int64_t best = 1'000'000;
                for (const auto& seq : before) best = std::min(best, length(seq, d));
                const std::int64_t lo = scripts::uniform(rng, 0, 4);
                const std::int64_t hi = best + scripts::uniform(rng, -1, 6);
                keep([&](const std::vector<int>& seq) {
                    auto l = length(seq, d);
                    return l >= lo && l <= hi;
                });
                desc << "dist in [" << lo << "," << hi << "]";
                IntVar& dist = s.make_int(lo, std::max(lo, hi));
                if (hi < lo) fail();
                s.post<seqcp::Distance>(q, d, dist);
                break;
            }
            case Kind::TransitionTimes: {
                std::vector<IntVar*> start;
                for (int v = 0; v < n; ++v) {
                    service[v] = scripts::uniform(rng, 0, 3);
                    const std::int64_t lo = scripts::uniform(rng, 0, 20);
                    win[v] = {lo, lo + scripts::uniform(rng, 0, 15)};
                    start.push_back(&s.make_int(win[v].lo, win[v].hi));
                }
                keep([&](const std::vector<int>& seq) { return schedulable(seq, win, service, d); });
                s.post<seqcp::TransitionTimes>(q, start, service, d);
                break;
            }
            case Kind::Precedence: {
                for (int v = 1; v < n - 1; ++v)
                    if (scripts::uniform(rng, 0, 3) > 0) order.push_back(v);
                std::shuffle(order.begin(), order.end(), rng);
                keep([&](const std::vector<int>& seq) { return ordered(seq, order); });
                desc << "order " << show(order);
                s.post<seqcp::Precedence>(q, order);
                break;
            }
            case Kind::Cumulative: {
                std::vector<int> inner;
                for (int v = 1; v < n - 1; ++v) inner.push_back(v);
                std::shuffle(inner.begin(), inner.end(), rng);
                for (std::size_t i = 0; i + 1 < inner.size(); i += 2)
                    acts.push_back({inner[i], inner[i + 1], scripts::uniform(rng, 1, 3)});
                cap = scripts::uniform(rng, 1, 4);
                keep([&](const std::vector<int>& seq) { return within_capacity(seq, acts, cap); });
                desc << "c=" << cap;
                for (const auto& a : acts) desc << " (" << a.start << "," << a.end << "," << a.load << ")";
                post_cumulative(s, q, acts, cap);
                break;
            }
        }
    } catch (const Inconsistency&) {
        Outcome o{"", before.size(), satisfying.size(), 0};
        if (!satisfying.empty())
            o.error = std::string(name(kind)) + " failed but " + show(satisfying.front()) + " satisfies it; " + desc.str();
        return o;
    }
    const auto after = enumerate(q);
    Outcome o{"", before.size(), satisfying.size(), after.size()};
    for (const auto& seq : satisfying) {
        if (!after.count(seq)) {
            o.error = std::string(name(kind)) + " pruned " + show(seq) + "; " + desc.str() + "\n" + dump(q);
            break;
        }
    }
    return o;
}

}  // namespace soundness
