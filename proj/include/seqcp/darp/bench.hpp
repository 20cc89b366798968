#pragma once

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqcp/darp/instance.hpp"

namespace seqcp::darp {

/// Cordeau's pr01..pr20 files are R1a..R10a then R1b..R10b.
inline std::string canonical_name(const std::string& name) {
    if (name.size() == 4 && name.rfind("pr", 0) == 0 && std::isdigit(name[2]) && std::isdigit(name[3])) {
        const int i = std::stoi(name.substr(2));
        if (i >= 1 && i <= 20) return "R" + std::to_string((i - 1) % 10 + 1) + (i <= 10 ? "a" : "b");
    }
    return name;
}

/// A file of `dir` whose stem names the instance (R1a, r1a, pr01, pr01.txt...).
inline std::optional<std::filesystem::path> find_instance(const std::filesystem::path& dir, const std::string& name) {
    namespace fs = std::filesystem;
    auto lower = [](std::string x) {
        std::transform(x.begin(), x.end(), x.begin(), [](unsigned char c) { return std::tolower(c); });
        return x;
    };
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return std::nullopt;
    std::vector<fs::path> hits;
    for (const auto& e : fs::directory_iterator(dir, ec))
        if (e.is_regular_file() && lower(canonical_name(lower(e.path().stem().string()))) == lower(name))
            hits.push_back(e.path());
    if (hits.empty()) return std::nullopt;
    return *std::min_element(hits.begin(), hits.end());
}

/// CSV "instance,bks" with unscaled objectives.
class BksTable {
public:
    static BksTable parse(std::istream& in) {
        BksTable t;
        std::string line;
        int ln = 0;
        while (std::getline(in, line)) {
            ++ln;
            if (line.empty() || line[0] == '#') continue;
            const auto comma = line.find(',');
            if (comma == std::string::npos) throw ParseError(ln, "expected 'instance,bks'");
            const std::string name = line.substr(0, comma);
            if (name == "instance") continue;
            try {
                t.bks_[canonical_name(name)] = std::stod(line.substr(comma + 1));
            } catch (const std::exception&) {
                throw ParseError(ln, "bad bks value");
            }
        }
        return t;
    }

    static BksTable load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        return parse(in);
    }

    std::optional<double> find(const std::string& name) const {
        auto it = bks_.find(canonical_name(name));
        if (it == bks_.end()) return std::nullopt;
        return it->second;
    }

    double at(const std::string& name) const {
        if (auto v = find(name)) return *v;
        throw std::out_of_range("no best known solution for instance '" + name + "'");
    }

    std::size_t size() const { return bks_.size(); }

private:
    std::map<std::string, double> bks_;
};

/// (obj - bks) / bks on unscaled values; 1 without an incumbent.
inline double primal_gap(std::optional<double> objective, double bks) {
    if (!objective) return 1.0;
    return (*objective - bks) / bks;
}

struct RunResult {
    std::string instance;
    std::optional<double> objective;  // unscaled
};

/// Fraction of runs with gap <= tau, for each tau.
inline std::vector<std::pair<double, double>> gap_profile(const std::vector<RunResult>& runs, const BksTable& bks,
                                                          const std::vector<double>& taus) {
    std::vector<double> gaps;
    for (const auto& r : runs) gaps.push_back(primal_gap(r.objective, bks.at(r.instance)));
    std::vector<std::pair<double, double>> out;
    for (double tau : taus) {
        const auto hit = std::count_if(gaps.begin(), gaps.end(), [tau](double g) { return g <= tau + 1e-12; });
        out.push_back({tau, gaps.empty() ? 0.0 : static_cast<double>(hit) / gaps.size()});
    }
    return out;
}

}  // namespace seqcp::darp
