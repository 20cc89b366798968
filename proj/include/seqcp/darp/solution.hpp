#pragma once

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "seqcp/darp/instance.hpp"
#include "seqcp/darp/model.hpp"

namespace seqcp::darp {

/// Routes in internal ids (depot copies included) with scaled visit times.
struct Solution {
    std::string instance;
    std::vector<std::vector<int>> routes;
    std::vector<std::vector<std::int64_t>> times;
    std::int64_t objective = 0;  // scaled
};

/// Reads the current leaf of the search. Visit times are the earliest ones
/// left by propagation, which form a valid schedule at a fixpoint.
inline Solution extract(Model& m) {
    Solution s;
    s.instance = m.instance().name;
    for (const SeqVar* q : m.routes()) {
        s.routes.push_back(q->members());
        std::vector<std::int64_t> t;
        for (int v : s.routes.back()) t.push_back(m.time(v).min());
        s.times.push_back(std::move(t));
    }
    s.objective = m.objective().min();
    return s;
}

inline std::string fixed2(std::int64_t scaled) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%lld.%02lld", scaled < 0 ? "-" : "", static_cast<long long>(std::llabs(scaled) / kScale),
                  static_cast<long long>(std::llabs(scaled) % kScale));
    return buf;
}

/// Line format:
///   instance <name>
///   objective <value>
///   vehicle <k>: <file id>@<time> ...
inline void write_text(std::ostream& os, const Instance& inst, const Solution& s) {
    os << "instance " << s.instance << "\n";
    os << "objective " << fixed2(s.objective) << "\n";
    for (std::size_t k = 0; k < s.routes.size(); ++k) {
        os << "vehicle " << k << ":";
        for (std::size_t i = 0; i < s.routes[k].size(); ++i)
            os << " " << inst.file_id(s.routes[k][i]) << "@" << fixed2(s.times[k][i]);
        os << "\n";
    }
}

inline nlohmann::json to_json(const Instance& inst, const Solution& s) {
    nlohmann::json j;
    j["instance"] = s.instance;
    j["objective"] = unscale(s.objective);
    j["objective_scaled"] = s.objective;
    j["scale"] = kScale;
    j["routes"] = nlohmann::json::array();
    for (std::size_t k = 0; k < s.routes.size(); ++k) {
        nlohmann::json visits = nlohmann::json::array();
        for (std::size_t i = 0; i < s.routes[k].size(); ++i)
            visits.push_back({{"node", inst.file_id(s.routes[k][i])},
                              {"internal", s.routes[k][i]},
                              {"time", unscale(s.times[k][i])}});
        j["routes"].push_back({{"vehicle", k}, {"visits", visits}});
    }
    return j;
}

/// Inverse of write_text. File ids are mapped back onto vehicle k's depot
/// copies and the request nodes.
inline Solution read_text(std::istream& in, const Instance& inst) {
    Solution s;
    bool have_objective = false;
    std::string line;
    int ln = 0;
    std::map<int, std::pair<std::vector<int>, std::vector<std::int64_t>>> by_vehicle;
    while (std::getline(in, line)) {
        ++ln;
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        if (key == "instance") {
            ss >> s.instance;
        } else if (key == "objective") {
            double v;
            if (!(ss >> v)) throw ParseError(ln, "objective needs a value");
            s.objective = scale(v);
            have_objective = true;
        } else if (key == "vehicle") {
            std::string idx;
            ss >> idx;
            if (idx.empty() || idx.back() != ':') throw ParseError(ln, "expected 'vehicle <k>:'");
            int k = -1;
            try {
                k = std::stoi(idx.substr(0, idx.size() - 1));
            } catch (const std::exception&) {
            }
            if (k < 0 || k >= inst.K) throw ParseError(ln, "vehicle index out of range");
            auto& [nodes, times] = by_vehicle[k];
            std::string tok;
            std::vector<std::string> toks;
            while (ss >> tok) toks.push_back(tok);
            for (std::size_t i = 0; i < toks.size(); ++i) {
                const auto at = toks[i].find('@');
                if (at == std::string::npos) throw ParseError(ln, "expected <node>@<time>, got '" + toks[i] + "'");
                int id;
                double t;
                try {
                    id = std::stoi(toks[i].substr(0, at));
                    t = std::stod(toks[i].substr(at + 1));
                } catch (const std::exception&) {
                    throw ParseError(ln, "bad visit '" + toks[i] + "'");
                }
                int v;
                if (id == 0 || id == 2 * inst.R + 1)
                    v = (i == 0) ? inst.start(k) : inst.end(k);
                else if (id >= 1 && id <= 2 * inst.R)
                    v = inst.K + id - 1;
                else
                    throw ParseError(ln, "unknown node id " + std::to_string(id));
                nodes.push_back(v);
                times.push_back(scale(t));
            }
        } else {
            throw ParseError(ln, "unexpected '" + key + "'");
        }
    }
    if (!have_objective) throw ParseError(ln, "missing objective line");
    for (int k = 0; k < inst.K; ++k) {
        auto it = by_vehicle.find(k);
        if (it == by_vehicle.end()) {
            s.routes.push_back({inst.start(k), inst.end(k)});
            s.times.push_back({inst.site[inst.start(k)].open, inst.site[inst.start(k)].open});
        } else {
            s.routes.push_back(it->second.first);
            s.times.push_back(it->second.second);
        }
    }
    return s;
}

/// Checks a solution against the model's definition from scratch. Returns
/// one message per violation; empty means valid.
inline std::vector<std::string> validate(const Instance& inst, const Solution& s, Variant variant = Variant::Darp) {
    std::vector<std::string> out;
    auto name = [&](int v) { return std::to_string(inst.file_id(v)); };
    if (static_cast<int>(s.routes.size()) != inst.K) {
        out.push_back("expected " + std::to_string(inst.K) + " routes, got " + std::to_string(s.routes.size()));
        return out;
    }
    std::vector<int> vehicle(inst.n(), -1);
    std::vector<int> position(inst.n(), -1);
    std::vector<std::int64_t> at(inst.n(), 0);
    std::int64_t total = 0;
    for (int k = 0; k < inst.K; ++k) {
        const auto& r = s.routes[k];
        const auto& t = s.times[k];
        const std::string veh = "vehicle " + std::to_string(k) + ": ";
        if (r.size() != t.size()) {
            out.push_back(veh + "route and times differ in length");
            continue;
        }
        if (r.size() < 2 || r.front() != inst.start(k) || r.back() != inst.end(k)) {
            out.push_back(veh + "must start and end at its depot");
            continue;
        }
        std::int64_t load = 0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const int v = r[i];
            if (v < 0 || v >= inst.n()) {
                out.push_back(veh + "unknown node");
                continue;
            }
            if (i > 0 && i + 1 < r.size()) {
                if (inst.is_depot(v)) out.push_back(veh + "depot visited mid-route");
                if (vehicle[v] >= 0) out.push_back("node " + name(v) + " visited more than once");
            }
            vehicle[v] = k;
            position[v] = static_cast<int>(i);
            at[v] = t[i];
            if (variant != Variant::Pdp && (t[i] < inst.site[v].open || t[i] > inst.site[v].close))
                out.push_back(veh + "node " + name(v) + " visited at " + fixed2(t[i]) + " outside its time window");
            if (i > 0) {
                const int u = r[i - 1];
                total += inst.d(u, v);
                if (t[i - 1] + inst.site[u].service + inst.d(u, v) > t[i])
                    out.push_back(veh + "cannot reach " + name(v) + " from " + name(u) + " by " + fixed2(t[i]));
            }
            load += inst.load(v);
            if (load > inst.capacity) out.push_back(veh + "capacity exceeded at node " + name(v));
            if (load < 0) out.push_back(veh + "negative load at node " + name(v));
        }
        if (variant == Variant::Darp && t.back() - t.front() > inst.max_duration)
            out.push_back(veh + "route lasts " + fixed2(t.back() - t.front()) + ", above the limit");
    }
    for (int r = 0; r < inst.R; ++r) {
        const int p = inst.pick(r), d = inst.drop(r);
        const std::string req = "request " + std::to_string(r + 1) + ": ";
        if (vehicle[p] < 0 || vehicle[d] < 0) {
            out.push_back(req + "not served");
            continue;
        }
        if (vehicle[p] != vehicle[d]) {
            out.push_back(req + "pickup and drop on different vehicles");
            continue;
        }
        if (position[p] > position[d]) out.push_back(req + "drop visited before pickup");
        if (variant == Variant::Darp && at[d] - at[p] - inst.site[p].service > inst.max_ride)
            out.push_back(req + "ride time " + fixed2(at[d] - at[p] - inst.site[p].service) + " above the limit");
    }
    if (total != s.objective)
        out.push_back("objective " + fixed2(s.objective) + " does not match the route length " + fixed2(total));
    return out;
}

}  // namespace seqcp::darp
