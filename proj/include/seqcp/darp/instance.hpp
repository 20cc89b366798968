#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqcp/constraints/matrix.hpp"

namespace seqcp::darp {

/// Times and distances are stored in hundredths.
constexpr std::int64_t kScale = 100;

inline std::int64_t scale(double x) { return static_cast<std::int64_t>(std::floor(x * kScale + 0.5)); }
inline double unscale(std::int64_t x) { return static_cast<double>(x) / kScale; }

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
};

/// One row of the instance file.
struct Site {
    int file_id;
    double x, y;
    std::int64_t service;  // scaled
    int load;
    std::int64_t open, close;  // scaled
};

/// A DARP instance with the depot duplicated per vehicle.
/// Internal node ids: [starts K | pickups R | drops R | ends K].
struct Instance {
    std::string name;
    int K = 0;
    int R = 0;
    std::int64_t max_duration = 0;  // scaled
    int capacity = 0;
    std::int64_t max_ride = 0;  // scaled, same for every request
    std::vector<Site> site;     // by internal id
    DistanceMatrix d;
    int repaired = 0;  // entries changed by the metric closure

    int n() const { return 2 * K + 2 * R; }
    int start(int k) const { return k; }
    int end(int k) const { return K + 2 * R + k; }
    int pick(int r) const { return K + r; }
    int drop(int r) const { return K + R + r; }
    bool is_depot(int v) const { return v < K || v >= K + 2 * R; }
    bool is_pick(int v) const { return v >= K && v < K + R; }
    bool is_drop(int v) const { return v >= K + R && v < K + 2 * R; }
    int request_of(int v) const { return is_pick(v) ? v - K : v - K - R; }
    int load(int v) const { return is_depot(v) ? 0 : (is_pick(v) ? site[v].load : -site[pick(request_of(v))].load); }

    /// Id used in files: depot 0, requests 1..2R, arrival depot 2R+1.
    int file_id(int v) const {
        if (v < K) return 0;
        if (v >= K + 2 * R) return 2 * R + 1;
        return v - K + 1;
    }
};

namespace detail {

inline std::vector<std::vector<double>> numeric_rows(std::istream& in, std::vector<int>& line_no) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        std::istringstream ss(line);
        std::vector<double> row;
        std::string tok;
        while (ss >> tok) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError(ln, "not a number: '" + tok + "'");
            }
        }
        if (row.empty()) continue;
        rows.push_back(std::move(row));
        line_no.push_back(ln);
    }
    return rows;
}

}  // namespace detail

/// Cordeau's format. Header "K n T Q L" (vehicles, requests or nodes, max
/// route duration, capacity, max ride time), then one row per site
/// "id x y service load open close": the depot, the pickups, the drops in
/// the same order, and optionally the depot again.
inline Instance parse_instance(std::istream& in, const std::string& name = {}) {
    std::vector<int> ln;
    auto rows = detail::numeric_rows(in, ln);
    if (rows.empty()) throw ParseError(1, "empty instance");
    const auto& h = rows[0];
    if (h.size() < 5) throw ParseError(ln[0], "header needs 5 fields: K n T Q L");
    Instance inst;
    inst.name = name;
    inst.K = static_cast<int>(h[0]);
    const int n = static_cast<int>(h[1]);
    inst.max_duration = scale(h[2]);
    inst.capacity = static_cast<int>(h[3]);
    inst.max_ride = scale(h[4]);
    if (inst.K <= 0 || n <= 0) throw ParseError(ln[0], "vehicle and request counts must be positive");

    int sites = static_cast<int>(rows.size()) - 1;
    auto fits = [&](int body) {
        if (body == 2 * n) return n;
        if (body == n && n % 2 == 0) return n / 2;
        return -1;
    };
    int R = fits(sites - 1);
    bool trailing_depot = false;
    if (R < 0 && sites >= 2 && (R = fits(sites - 2)) >= 0) trailing_depot = true;
    if (R < 0)
        throw ParseError(ln.back(), "expected " + std::to_string(2 * n + 1) + " or " + std::to_string(n + 1) +
                                        " site rows, found " + std::to_string(sites));
    inst.R = R;

    std::vector<Site> file_sites;
    for (int i = 1; i <= 1 + 2 * R; ++i) {
        const auto& r = rows[i];
        if (r.size() < 7) throw ParseError(ln[i], "site row needs 7 fields: id x y service load open close");
        Site s{static_cast<int>(r[0]), r[1], r[2], scale(r[3]), static_cast<int>(r[4]), scale(r[5]), scale(r[6])};
        if (s.open > s.close) throw ParseError(ln[i], "time window opens after it closes");
        if (s.service < 0) throw ParseError(ln[i], "negative service time");
        if (i >= 2 && i <= 1 + R && s.load < 0) throw ParseError(ln[i], "pickup with negative load");
        if (i >= 2 && s.load > inst.capacity) throw ParseError(ln[i], "load exceeds vehicle capacity");
        file_sites.push_back(s);
    }
    if (trailing_depot && rows.back().size() < 7) throw ParseError(ln.back(), "site row needs 7 fields");

    inst.site.resize(inst.n());
    for (int k = 0; k < inst.K; ++k) inst.site[inst.start(k)] = inst.site[inst.end(k)] = file_sites[0];
    for (int r = 0; r < R; ++r) {
        inst.site[inst.pick(r)] = file_sites[1 + r];
        inst.site[inst.drop(r)] = file_sites[1 + R + r];
    }

    inst.d = DistanceMatrix(inst.n(), 0);
    for (int i = 0; i < inst.n(); ++i)
        for (int j = 0; j < inst.n(); ++j)
            inst.d(i, j) = scale(std::hypot(inst.site[i].x - inst.site[j].x, inst.site[i].y - inst.site[j].y));
    if (!inst.d.satisfies_triangle_inequality()) inst.repaired = inst.d.close_metric();
    return inst;
}

inline Instance parse_instance(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    return parse_instance(in, name);
}

inline Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string name = path.substr(path.find_last_of('/') + 1);
    name = name.substr(0, name.find('.'));
    return parse_instance(in, name);
}

}  // namespace seqcp::darp
