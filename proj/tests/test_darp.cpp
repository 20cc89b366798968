#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "seqcp/darp/bench.hpp"
#include "seqcp/darp/solve.hpp"
#include "support/darp_oracle.hpp"
#include "support/synthetic.hpp"

using namespace seqcp;
using namespace seqcp::darp;

namespace {

std::string source_dir() {
    const char* s = std::getenv("SEQCP_SOURCE_DIR");
    return s ? s : ".";
}

const char* kOneRequest =
    "1 1 480 3 30\n"
    "0 0 0 0 0 0 1440\n"
    "1 3 0 0 1 0 1440\n"
    "2 3 4 0 -1 0 1440\n";

}  // namespace

TEST(Parse, HeaderAndSizes) {
    Instance inst = parse_instance(synthetic::cordeau_like(1), "R1a");
    EXPECT_EQ(inst.K, 3);
    EXPECT_EQ(inst.R, 24);
    EXPECT_EQ(inst.n(), 2 * 24 + 2 * 3);
    EXPECT_EQ(inst.capacity, 6);
    EXPECT_EQ(inst.max_ride, 9000);
    EXPECT_EQ(inst.max_duration, 48000);
    EXPECT_EQ(inst.file_id(inst.start(2)), 0);
    EXPECT_EQ(inst.file_id(inst.pick(0)), 1);
    EXPECT_EQ(inst.file_id(inst.drop(23)), 48);
    EXPECT_EQ(inst.file_id(inst.end(1)), 49);
}

TEST(Parse, NodeCountHeaderAndNoTrailingDepot) {
    // Second header field counting sites instead of requests.
    Instance inst = parse_instance(
        "1 2 480 3 30\n"
        "0 0 0 0 0 0 1440\n"
        "1 1 0 3 1 0 1440\n"
        "2 2 0 3 -1 0 1440\n",
        "x");
    EXPECT_EQ(inst.R, 1);
    EXPECT_EQ(inst.d(inst.pick(0), inst.drop(0)), 100);
}

TEST(Parse, DistancesScaledAndRounded) {
    Instance inst = parse_instance(kOneRequest, "x");
    EXPECT_EQ(inst.d(inst.start(0), inst.pick(0)), 300);
    EXPECT_EQ(inst.d(inst.pick(0), inst.drop(0)), 400);
    EXPECT_EQ(inst.d(inst.start(0), inst.drop(0)), 500);
    EXPECT_EQ(inst.d(inst.start(0), inst.end(0)), 0);
    EXPECT_EQ(scale(0.125), 13);
    EXPECT_EQ(scale(2.344), 234);
    EXPECT_EQ(scale(190.02), 19002);
}

TEST(Parse, SamePlacePickupAndDrop) {
    Instance inst = parse_instance(
        "1 1 480 3 30\n"
        "0 0 0 0 0 0 1440\n"
        "1 2.5 -1.5 0 1 0 1440\n"
        "2 2.5 -1.5 0 -1 0 1440\n"
        "3 0 0 0 0 0 1440\n",
        "x");
    EXPECT_EQ(inst.d(inst.pick(0), inst.drop(0)), 0);
}

TEST(Parse, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string& text) {
        try {
            parse_instance(text, "x");
        } catch (const ParseError& e) {
            return e.line;
        }
        return -1;
    };
    EXPECT_EQ(line_of("1 1 480 3 30\n0 0 0 0 0 0 1440\n1 3 0 0 1 50 40\n2 3 4 0 -1 0 1440\n"), 3);
    EXPECT_EQ(line_of("1 1 480 3\n"), 1);
    EXPECT_EQ(line_of("1 1 480 3 30\n0 0 0 0 0 0 1440\n\n1 3 0 0 1 0 1440\n2 3 4 zero -1 0 1440\n"), 5);
    // Neither 2n nor n rows, even allowing a trailing depot.
    EXPECT_GT(line_of("1 2 480 3 30\n0 0 0 0 0 0 1440\n1 3 0 0 1 0 1440\n2 3 4 0 -1 0 1440\n3 3 4 0 1 0 1440\n"
                      "4 3 4 0 -1 0 1440\n5 3 4 0 1 0 1440\n6 3 4 0 -1 0 1440\n"),
              0);
    EXPECT_EQ(line_of("1 1 480 3 30\n0 0 0 0 0 0 1440\n1 3 0 0 1 0\n2 3 4 0 -1 0 1440\n"), 3);
    EXPECT_EQ(line_of(""), 1);
}

TEST(Parse, RoundingCanBreakTriangleInequality) {
    // Three collinear points whose rounded legs sum below the rounded whole.
    Instance inst = parse_instance(
        "1 1 480 3 30\n"
        "0 0 0 0 0 0 1440\n"
        "1 0.005 0 0 1 0 1440\n"
        "2 0.01 0 0 -1 0 1440\n",
        "x");
    EXPECT_TRUE(inst.d.satisfies_triangle_inequality());
}

TEST(Heuristic, InsertionCost) {
    EXPECT_EQ(insertion_cost(5, 3, 6, 100, 10, 2, 4), 84);
    // No detour: only the slack remains, with a minus sign.
    EXPECT_EQ(insertion_cost(3, 4, 7, 50, 10, 0, 0), -(50 - 10 - 3 - 4));
    EXPECT_GT(insertion_cost(6, 3, 6, 100, 10, 2, 4), insertion_cost(5, 3, 6, 100, 10, 2, 4) - 1 + 80 - 1);
}

TEST(Model, SingleRequestOptimum) {
    Instance inst = parse_instance(kOneRequest, "x");
    Model m(inst);
    auto stats = dfs(m.solver(), m.branching(), {}, {}, &m.objective());
    ASSERT_TRUE(stats.best);
    EXPECT_EQ(*stats.best, 300 + 400 + 500);
}

TEST(Model, RideTimeBelowDirectTripIsInfeasible) {
    Instance inst = parse_instance(
        "1 1 480 3 3\n"
        "0 0 0 0 0 0 1440\n"
        "1 3 0 0 1 0 1440\n"
        "2 3 4 0 -1 0 1440\n",
        "x");
    EXPECT_THROW(Model m(inst), Inconsistency);
    SolveOptions opt;
    opt.time_limit = 5;
    EXPECT_EQ(solve(inst, opt).status, Status::Infeasible);
    opt.variant = Variant::Pdptw;
    EXPECT_EQ(solve(inst, opt).status, Status::Solved);
}

TEST(Model, RelaxedVariantsHaveWeakerRoots) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Instance inst = parse_instance(synthetic::cordeau_like(seed), "x");
        Model darp(inst, Variant::Darp);
        Model pdptw(inst, Variant::Pdptw);
        Model pdp(inst, Variant::Pdp);
        EXPECT_LE(pdptw.objective().min(), darp.objective().min());
        EXPECT_LE(pdp.objective().min(), pdptw.objective().min());
    }
}

TEST(Validate, SolverSolutionPasses) {
    Instance inst = parse_instance(synthetic::cordeau_like(7, {2, 8, 480, 3, 90, 3, 1440, 10, 15}), "x");
    SolveOptions opt;
    opt.time_limit = 2;
    auto res = solve(inst, opt);
    ASSERT_EQ(res.status, Status::Solved);
    EXPECT_TRUE(validate(inst, *res.best).empty());
}

namespace {

Solution one_request_solution(const Instance& inst) {
    Solution s;
    s.instance = "x";
    s.routes = {{inst.start(0), inst.pick(0), inst.drop(0), inst.end(0)}};
    s.times = {{0, 300, 700, 1200}};
    s.objective = 1200;
    return s;
}

}  // namespace

TEST(Validate, HandBuiltSolutions) {
    Instance inst = parse_instance(kOneRequest, "x");
    Solution s = one_request_solution(inst);
    EXPECT_TRUE(validate(inst, s).empty());

    Solution swapped = s;
    std::swap(swapped.routes[0][1], swapped.routes[0][2]);
    auto v = validate(inst, swapped);
    ASSERT_FALSE(v.empty());
    EXPECT_NE(std::find_if(v.begin(), v.end(), [](const std::string& m) { return m.find("before pickup") != std::string::npos; }),
              v.end());

    Solution off = s;
    off.objective += 1;
    v = validate(inst, off);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("objective"), std::string::npos);

    Solution late = s;
    late.times[0][2] = 600;  // faster than the trip allows
    EXPECT_FALSE(validate(inst, late).empty());

    Solution missing = s;
    missing.routes[0] = {inst.start(0), inst.end(0)};
    missing.times[0] = {0, 0};
    missing.objective = 0;
    EXPECT_FALSE(validate(inst, missing).empty());
}

TEST(Validate, RideAndDurationOnlyForDarp) {
    Instance inst = parse_instance(
        "1 1 10 3 5\n"
        "0 0 0 0 0 0 1440\n"
        "1 3 0 0 1 0 1440\n"
        "2 3 4 0 -1 0 1440\n",
        "x");
    Solution s = one_request_solution(inst);
    s.times = {{0, 300, 1000, 1500}};  // ride 7, duration 15
    EXPECT_EQ(validate(inst, s, Variant::Darp).size(), 2u);
    EXPECT_TRUE(validate(inst, s, Variant::Pdptw).empty());
}

TEST(SolutionFile, TextRoundTrip) {
    Instance inst = parse_instance(synthetic::cordeau_like(3, {2, 6, 480, 3, 90, 3, 1440, 10, 15}), "x");
    SolveOptions opt;
    opt.time_limit = 1;
    auto res = solve(inst, opt);
    ASSERT_TRUE(res.best);
    std::stringstream ss;
    write_text(ss, inst, *res.best);
    Solution back = read_text(ss, inst);
    EXPECT_EQ(back.routes, res.best->routes);
    EXPECT_EQ(back.times, res.best->times);
    EXPECT_EQ(back.objective, res.best->objective);
    auto j = to_json(inst, *res.best);
    EXPECT_EQ(j["objective_scaled"].get<std::int64_t>(), res.best->objective);
    EXPECT_EQ(j["routes"].size(), 2u);
}

TEST(SolutionFile, BadLinesAreReported) {
    Instance inst = parse_instance(kOneRequest, "x");
    std::istringstream in("objective 12\nvehicle 0: 0@0 1@x\n");
    try {
        read_text(in, inst);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 2);
    }
}

TEST(Gap, Profile) {
    std::istringstream csv("instance,bks\nA,100\nB,200\npr01,190.02\n");
    BksTable t = BksTable::parse(csv);
    EXPECT_DOUBLE_EQ(*t.find("R1a"), 190.02);
    EXPECT_DOUBLE_EQ(primal_gap(190.02, 190.02), 0.0);
    EXPECT_DOUBLE_EQ(primal_gap(std::nullopt, 100), 1.0);

    auto p = gap_profile({{"A", 100.0}}, t, {0.0});
    EXPECT_DOUBLE_EQ(p[0].second, 1.0);
    p = gap_profile({{"A", 102.0}, {"B", 220.0}}, t, {0.0, 0.05, 0.10, 0.5});
    EXPECT_DOUBLE_EQ(p[0].second, 0.0);
    EXPECT_DOUBLE_EQ(p[1].second, 0.5);
    EXPECT_DOUBLE_EQ(p[2].second, 1.0);
    p = gap_profile({{"A", std::nullopt}}, t, {0.5, 1.0});
    EXPECT_DOUBLE_EQ(p[0].second, 0.0);
    EXPECT_DOUBLE_EQ(p[1].second, 1.0);
    EXPECT_THROW(gap_profile({{"Z", 1.0}}, t, {0.0}), std::out_of_range);
}

TEST(Gap, ShippedTable) {
    BksTable t = BksTable::load(source_dir() + "/data/bks.csv");
    EXPECT_EQ(t.size(), 20u);
    EXPECT_DOUBLE_EQ(t.at("R1a"), 190.02);
    EXPECT_DOUBLE_EQ(t.at("pr11"), 164.46);
    EXPECT_DOUBLE_EQ(t.at("pr20"), 783.81);
    EXPECT_EQ(canonical_name("pr07"), "R7a");
}

TEST(Optimality, MatchesExhaustiveSearch) {
    std::mt19937_64 rng(31337);
    int feasible = 0;
    for (int i = 0; i < 60; ++i) {
        Instance inst = parse_instance(oracle::tiny_instance(rng, 4), "tiny");
        const auto expected = oracle::optimum(inst);
        std::optional<std::int64_t> got;
        try {
            Model m(inst);
            auto stats = dfs(m.solver(), m.branching(), {}, {}, &m.objective());
            ASSERT_TRUE(stats.complete);
            got = stats.best;
        } catch (const Inconsistency&) {
        }
        EXPECT_EQ(got, expected) << "instance " << i;
        feasible += expected.has_value();
    }
    EXPECT_GT(feasible, 5);
}

TEST(Optimality, RelaxedVariantsMatchExhaustiveSearch) {
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 30; ++i) {
        Instance inst = parse_instance(oracle::tiny_instance(rng, 4), "tiny");
        for (Variant v : {Variant::Pdptw, Variant::Pdp}) {
            const auto expected = oracle::optimum(inst, v);
            std::optional<std::int64_t> got;
            try {
                Model m(inst, v);
                got = dfs(m.solver(), m.branching(), {}, {}, &m.objective()).best;
            } catch (const Inconsistency&) {
            }
            EXPECT_EQ(got, expected) << "instance " << i << " " << to_string(v);
        }
    }
}

TEST(Lns, SyntheticFullSizeInstance) {
    Instance inst = parse_instance(synthetic::cordeau_like(11), "synthetic");
    SolveOptions opt;
    opt.time_limit = 4;
    opt.seed = 5;
    std::vector<std::int64_t> trace;
    opt.on_improve = [&](const Solution& s, double) {
        EXPECT_TRUE(validate(inst, s).empty());
        trace.push_back(s.objective);
    };
    auto res = solve(inst, opt);
    ASSERT_EQ(res.status, Status::Solved);
    EXPECT_TRUE(validate(inst, *res.best).empty());
    ASSERT_FALSE(trace.empty());
    for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LT(trace[i], trace[i - 1]);
    EXPECT_EQ(trace.back(), res.best->objective);
    EXPECT_GT(res.lns.iterations, 0);
}

TEST(Lns, WarmStartFromRelaxationRejectsInfeasible) {
    Instance inst = parse_instance(kOneRequest, "x");
    Solution s = one_request_solution(inst);
    SolveOptions opt;
    opt.time_limit = 1;
    opt.warm_start = s;
    auto res = solve(inst, opt);
    EXPECT_EQ(res.best->objective, 1200);
    s.routes[0] = {inst.start(0), inst.drop(0), inst.pick(0), inst.end(0)};
    opt.warm_start = s;
    EXPECT_THROW(solve(inst, opt), std::invalid_argument);
}
