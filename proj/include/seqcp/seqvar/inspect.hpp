#pragma once

// Debugging and testing helpers for SequenceDomain: a comparable snapshot of
// the whole structure, a Fig-style table dump, the structural invariant
// checker, and brute enumeration of the represented sequences (small n only).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "seqcp/seqvar/sequence_domain.hpp"

namespace seqcp {

struct DomainSnapshot {
    struct Row {
        std::vector<int> in;
        std::vector<int> out;
        int n_insert = 0;
        int prev = 0;
        int next = 0;
        bool operator==(const Row&) const = default;
    };
    std::vector<Row> rows;
    int n_member = 0;
    std::vector<int> insertable;
    std::vector<int> required;
    std::vector<int> excluded;

    bool operator==(const DomainSnapshot&) const = default;
};

inline DomainSnapshot snapshot(const SequenceDomain& d) {
    auto sorted = [](std::vector<int> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    DomainSnapshot s;
    s.rows.resize(d.size());
    for (int v = 0; v < d.size(); ++v) {
        auto& r = s.rows[v];
        r.in = sorted(d.edges_to(v).values());
        r.out = sorted(d.edges_from(v).values());
        r.n_insert = d.n_insert(v);
        r.prev = d.prev(v);
        r.next = d.next(v);
    }
    s.n_member = d.n_member();
    s.insertable = sorted(d.insertable());
    s.required = sorted(d.required());
    s.excluded = sorted(d.excluded());
    return s;
}

using NodeNamer = std::function<std::string(int)>;

inline std::string dump(const DomainSnapshot& s, const NodeNamer& name) {
    auto set = [&](const std::vector<int>& v) {
        if (v.empty()) return std::string("{}");
        std::string out = "{";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ", ";
            out += name(v[i]);
        }
        return out + "}";
    };
    std::ostringstream os;
    os << "node | N- | N+ | nI | prev | next\n";
    for (std::size_t v = 0; v < s.rows.size(); ++v) {
        const auto& r = s.rows[v];
        os << name(static_cast<int>(v)) << " | " << set(r.in) << " | " << set(r.out) << " | " << r.n_insert << " | "
           << name(r.prev) << " | " << name(r.next) << "\n";
    }
    os << "nS = " << s.n_member << ", I = " << set(s.insertable) << "\n";
    os << "R = " << set(s.required) << ", X = " << set(s.excluded) << "\n";
    return os.str();
}

inline std::string dump(const SequenceDomain& d, NodeNamer name = {}) {
    if (!name) {
        name = [&d](int v) {
            if (v == d.alpha()) return std::string("alpha");
            if (v == d.omega()) return std::string("omega");
            return "v" + std::to_string(v);
        };
    }
    std::ostringstream os;
    os << "s = ";
    const auto seq = d.members();
    for (std::size_t i = 0; i < seq.size(); ++i) os << (i ? " " : "") << name(seq[i]);
    os << "\n" << dump(snapshot(d), name);
    return os.str();
}

/// Runs every structural invariant of the compact encoding and returns one
/// message per violation. O(n^2).
inline std::vector<std::string> check_invariants(const SequenceDomain& d) {
    std::vector<std::string> bad;
    const int n = d.size();
    const int a = d.alpha();
    const int w = d.omega();
    auto report = [&](const std::string& what) { bad.push_back(what); };
    auto ij = [](int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (d.edges_from(i).contains(j) != d.edges_to(j).contains(i))
                report("edge channeling broken on " + ij(i, j));

    for (int i = 0; i < n; ++i) {
        const int j = d.next(i);
        if (d.prev(j) != i) report("succ/pred mirror broken at " + std::to_string(i));
    }
    for (int j = 0; j < n; ++j) {
        const int i = d.prev(j);
        if (d.next(i) != j) report("pred/succ mirror broken at " + std::to_string(j));
    }

    int members = 0;
    for (int v = 0; v < n; ++v) members += d.is_member(v);
    if (members != d.n_member()) report("nS is " + std::to_string(d.n_member()) + ", counted " + std::to_string(members));

    for (int v = 0; v < n; ++v) {
        if (d.is_insertable(v)) {
            int count = 0;
            for (int u : d.edges_to(v)) count += d.is_member(u);
            if (count != d.n_insert(v))
                report("nI of " + std::to_string(v) + " is " + std::to_string(d.n_insert(v)) + ", counted " +
                       std::to_string(count));
        }
        if ((d.n_insert(v) >= 1) != d.is_insertable(v)) report("nI >= 1 disagrees with I for " + std::to_string(v));
        if (d.is_insertable(v) && (d.is_member(v) || d.is_excluded(v)))
            report("insertable node " + std::to_string(v) + " is a member or excluded");
        if (!d.is_insertable(v) && !d.is_member(v) && !d.is_excluded(v))
            report("node " + std::to_string(v) + " is neither member, excluded nor insertable");
    }

    if (d.next(w) != a || d.prev(a) != w) report("omega does not close the circuit to alpha");

    for (int i = 0; i < n; ++i) {
        const int j = d.next(i);
        if (i != j && !d.edges_from(i).contains(j)) report("successor link not backed by an edge " + ij(i, j));
        const int p = d.prev(i);
        if (p != i && !d.edges_to(i).contains(p)) report("predecessor link not backed by an edge " + ij(p, i));
    }

    {
        std::vector<char> seen(n, 0);
        for (int i = 0; i < n; ++i) {
            if (seen[d.next(i)]) report("two nodes share successor " + std::to_string(d.next(i)));
            seen[d.next(i)] = 1;
        }
        std::vector<char> on_circuit(n, 0);
        int v = a;
        for (int steps = 0; steps <= n && !on_circuit[v]; ++steps) {
            on_circuit[v] = 1;
            v = d.next(v);
        }
        if (v != a) report("circuit from alpha does not return to alpha");
        for (int u = 0; u < n; ++u)
            if (d.is_member(u) != static_cast<bool>(on_circuit[u]))
                report("membership of " + std::to_string(u) + " disagrees with the circuit through alpha");
    }

    // Clique only over insertable nodes: excluded non-members carry no edge.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && d.is_insertable(i) && d.is_insertable(j) && !d.edges_to(j).contains(i))
                report("insertable nodes not adjacent " + ij(i, j));

    for (int i = 0; i < n; ++i) {
        const int k = d.next(i);
        if (k == i) continue;
        for (int j = 0; j < n; ++j) {
            if (j == i || j == k) continue;
            if (d.edges_to(j).contains(i) != d.edges_from(j).contains(k))
                report("insertion edges unpaired for " + std::to_string(j) + " between " + ij(i, k));
        }
    }

    for (int v = 0; v < n; ++v) {
        const bool x = d.is_excluded(v);
        if (x != d.edges_to(v).empty() || x != d.edges_from(v).empty())
            report("excluded status of " + std::to_string(v) + " disagrees with its edges");
        if (d.is_member(v) && !d.is_required(v)) report("member " + std::to_string(v) + " is not required");
        if (d.is_required(v) && d.is_insertable(v) && d.n_insert(v) <= 1)
            report("required insertable " + std::to_string(v) + " has fewer than two insertions");
        if (d.is_required(v) && d.is_excluded(v)) report("node " + std::to_string(v) + " both required and excluded");
    }
    return bad;
}

using Sequence = std::vector<int>;

/// Every sequence represented by the domain: supersequences of the partial
/// sequence whose added nodes sit after a member p with edge (p, v), counting
/// p as the closest member on their left, and containing every required node.
/// Exponential; meant for n <= 8.
inline std::set<Sequence> enumerate(const SequenceDomain& d) {
    std::set<Sequence> result;
    const auto members = d.members();
    const auto required = d.required();
    std::vector<int> candidates;
    for (int v = 0; v < d.size(); ++v)
        if (!d.is_member(v)) candidates.push_back(v);

    Sequence current{members.front()};
    std::vector<char> used(d.size(), 0);

    // `current` ends inside the gap opened by members[g].
    std::function<void(std::size_t)> extend = [&](std::size_t g) {
        const int p = members[g];
        if (p == d.omega()) {
            for (int r : required)
                if (!d.is_member(r) && !used[r]) return;
            result.insert(current);
            return;
        }
        current.push_back(members[g + 1]);
        extend(g + 1);
        current.pop_back();
        for (int v : candidates) {
            if (used[v] || !d.has_edge(p, v)) continue;
            used[v] = 1;
            current.push_back(v);
            extend(g);
            current.pop_back();
            used[v] = 0;
        }
    };
    extend(0);
    return result;
}

}  // namespace seqcp
