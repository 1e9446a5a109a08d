#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "coopsearch/analytics.hpp"
#include "coopsearch/harness.hpp"
#include "coopsearch/table.hpp"

using namespace coopsearch;

namespace {

TrialPlan homogeneous_plan(std::size_t m, AllocationMethod alloc, std::uint64_t trials, std::uint64_t seed = 1) {
    TrialPlan p;
    p.agents = m;
    p.allocation = alloc;
    p.speeds = SpeedDistribution::homogeneous(1.0);
    p.trials = trials;
    p.base_seed = seed;
    return p;
}

bool same(const SummaryStats& a, const SummaryStats& b) {
    return a.mean == b.mean && a.std_error == b.std_error && a.ci95_half_width == b.ci95_half_width &&
           a.trials == b.trials && a.min == b.min && a.max == b.max;
}

}  // namespace

TEST(TrialPlan, RejectsUnsupportedPairs) {
    TrialPlan p;
    p.strategy = Strategy::proportional();
    p.allocation = AllocationMethod::random;
    EXPECT_THROW(validate(p), std::invalid_argument);
    p.strategy = Strategy::one_directional();
    p.allocation = AllocationMethod::proportional;
    EXPECT_THROW(validate(p), std::invalid_argument);
    p.allocation = AllocationMethod::equal;
    p.trials = 0;
    EXPECT_THROW(validate(p), std::invalid_argument);
    p.trials = 10;
    p.agents = 3;
    p.strategy = Strategy::grouped(4);
    EXPECT_THROW(validate(p), std::invalid_argument);
    p.strategy = Strategy::grouped(3);
    p.speeds = std::vector<double>{1, 2};
    EXPECT_THROW(validate(p), std::invalid_argument);
    p.speeds = std::vector<double>{1, 2, 3};
    EXPECT_NO_THROW(validate(p));
    EXPECT_THROW(run_trials(TrialPlan{RegionSpec(10), 2, Strategy::proportional(), AllocationMethod::equal,
                                      SpeedDistribution::homogeneous(1), 5, 0}),
                 std::invalid_argument);
}

TEST(RunningStats, MergeMatchesSequential) {
    SplitMix64 rng(3);
    RunningStats all, left, right;
    for (int i = 0; i < 1000; ++i) {
        const double x = rng.uniform() * 100;
        all.add(x);
        (i < 370 ? left : right).add(x);
    }
    left.merge(right);
    const auto a = all.summary();
    const auto b = left.summary();
    EXPECT_NEAR(a.mean, b.mean, 1e-12);
    EXPECT_NEAR(a.std_error, b.std_error, 1e-12);
    EXPECT_EQ(a.min, b.min);
    EXPECT_EQ(a.max, b.max);
    EXPECT_EQ(b.trials, 1000u);
    EXPECT_DOUBLE_EQ(b.ci95_half_width, 1.96 * b.std_error);
    EXPECT_LE(b.min, b.mean);
    EXPECT_LE(b.mean, b.max);
}

TEST(RunningStats, SingleSample) {
    RunningStats s;
    s.add(4.0);
    const auto out = s.summary();
    EXPECT_EQ(out.mean, 4.0);
    EXPECT_EQ(out.std_error, 0.0);
    EXPECT_EQ(out.ci95_half_width, 0.0);
}

TEST(DrawTrial, FollowsAllocationAndIsReproducible) {
    auto plan = homogeneous_plan(4, AllocationMethod::equal, 10);
    const auto s = draw_trial(plan, 3);
    ASSERT_EQ(s.agents.size(), 4u);
    EXPECT_EQ(s.agents[2].start, 500.0);
    EXPECT_EQ(s.agents[3].speed, 1.0);

    plan.allocation = AllocationMethod::random;
    plan.speeds = SpeedDistribution::reference_mix();
    const auto a = draw_trial(plan, 17);
    const auto b = draw_trial(plan, 17);
    const auto c = draw_trial(plan, 18);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(a.agents[k].start, b.agents[k].start);
        EXPECT_EQ(a.agents[k].speed, b.agents[k].speed);
    }
    EXPECT_EQ(a.solution.position, b.solution.position);
    EXPECT_NE(a.solution.position, c.solution.position);
    EXPECT_EQ(trial_time(plan, 17), simulate(a).time_to_solution);
}

TEST(DrawTrial, ProportionalStartsFollowSpeeds) {
    TrialPlan plan;
    plan.agents = 5;
    plan.strategy = Strategy::proportional();
    plan.allocation = AllocationMethod::proportional;
    plan.speeds = SpeedDistribution::reference_mix();
    const auto s = draw_trial(plan, 2);
    double total = 0.0;
    for (const auto& a : s.agents) total += a.speed;
    EXPECT_EQ(s.agents[0].start, 0.0);
    EXPECT_NEAR(s.agents[1].start, s.agents[0].speed * 1000.0 / total, 1e-9);
}

TEST(RunTrials, DeterministicAcrossWorkerCounts) {
    TrialPlan plan;
    plan.agents = 7;
    plan.strategy = Strategy::grouped(3);
    plan.speeds = SpeedDistribution::reference_mix();
    plan.trials = 50'000;
    plan.base_seed = 99;
    const auto one = run_trials(plan, 1);
    EXPECT_TRUE(same(one, run_trials(plan, 1)));
    EXPECT_TRUE(same(one, run_trials(plan, 3)));
    EXPECT_TRUE(same(one, run_trials(plan, 8)));
    plan.base_seed = 100;
    EXPECT_FALSE(same(one, run_trials(plan, 1)));
}

TEST(RunTrials, EqualAllocationMatchesClosedForm) {
    const auto s = run_trials(homogeneous_plan(10, AllocationMethod::equal, 200'000));
    EXPECT_NEAR(s.mean, 50.0, 3 * s.std_error);
    EXPECT_LE(s.max, 100.0);
    EXPECT_GE(s.min, 0.0);
}

TEST(RunTrials, FixedSpeedList) {
    TrialPlan plan = homogeneous_plan(2, AllocationMethod::equal, 100'000);
    plan.speeds = std::vector<double>{1.0, 3.0};
    // agent 0 sweeps from 0 at speed 1, agent 1 from 500 at speed 3;
    // agent 1 passes 0 at t = 500/3 and reaches x in [0, 500) at (500 + x)/3 < x when x > 250
    // E = 1/1000 * (int_0^250 x dx + int_250^500 (500+x)/3 dx + int_0^500 y/3 dy)
    const double expected = (250.0 * 250.0 / 2 + (500.0 * 250.0 + (500.0 * 500.0 - 250.0 * 250.0) / 2) / 3 +
                             500.0 * 500.0 / 6) /
                            1000.0;
    const auto s = run_trials(plan);
    EXPECT_NEAR(s.mean, expected, 4 * s.std_error);
}

TEST(RunTrials, ProportionalMatchesResampledAverage) {
    TrialPlan plan;
    plan.agents = 10;
    plan.strategy = Strategy::proportional();
    plan.allocation = AllocationMethod::proportional;
    plan.speeds = SpeedDistribution::reference_mix();
    plan.trials = 200'000;
    const auto s = run_trials(plan);
    EXPECT_NEAR(s.mean, expected_time_proportional_resampled(1000, 10, SpeedDistribution::reference_mix()),
                4 * s.std_error);
}

TEST(RunTrials, AnalyticValueUsuallyInsideConfidenceInterval) {
    int covered = 0;
    const int runs = 40;
    for (int r = 0; r < runs; ++r) {
        const auto s = run_trials(homogeneous_plan(6, AllocationMethod::equal, 5'000, 1000 + r), 1);
        covered += std::abs(s.mean - expected_time_equal(1000, 6, 1.0)) <= s.ci95_half_width;
    }
    EXPECT_GE(covered, static_cast<int>(0.9 * runs));
}

TEST(SweepM, ProducesIncreasingPointsAndDecreasingTimes) {
    auto plan = homogeneous_plan(1, AllocationMethod::equal, 20'000);
    const auto sweep = sweep_m(plan, {1, 2, 4, 8, 16, 32});
    ASSERT_EQ(sweep.points.size(), 6u);
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        const auto& p = sweep.points[i];
        EXPECT_NEAR(p.stats.mean, 500.0 / p.agents, 4 * p.stats.std_error);
        if (i > 0) EXPECT_LT(p.stats.mean, sweep.points[i - 1].stats.mean);
    }
    EXPECT_THROW(sweep_m(plan, {}), std::invalid_argument);
    EXPECT_THROW(sweep_m(plan, {4, 4}), std::invalid_argument);
    EXPECT_THROW(sweep_m(plan, {4, 2}), std::invalid_argument);
}

TEST(CompareStrategies, TargetsAndLabels) {
    const auto t = parse_target("grouped-3:12");
    EXPECT_EQ(t.strategy, Strategy::grouped(3));
    EXPECT_EQ(t.allocation, AllocationMethod::random);
    EXPECT_EQ(t.agents, 12u);
    EXPECT_EQ(parse_target("equal:10").allocation, AllocationMethod::equal);
    EXPECT_EQ(parse_target("equal:10").label(), "equal");
    EXPECT_EQ(parse_target("proportional:10").allocation, AllocationMethod::proportional);
    EXPECT_EQ(parse_target("random:19").label(), "one-directional");
    EXPECT_THROW(parse_target("equal"), std::invalid_argument);
    EXPECT_THROW(parse_target("equal:0"), std::invalid_argument);
    EXPECT_THROW(parse_target("zigzag:3"), std::invalid_argument);
}

TEST(CompareStrategies, HomogeneousEquivalence) {
    const auto rows = compare_strategies(RegionSpec(1000), SpeedDistribution::homogeneous(1.0),
                                         {parse_target("equal:10"), parse_target("random:19")}, 100'000, 5);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_NEAR(rows[0].stats.mean, 50, 4 * rows[0].stats.std_error);
    EXPECT_NEAR(rows[1].stats.mean, 50, 4 * rows[1].stats.std_error);
    EXPECT_THROW(compare_strategies(RegionSpec(1000), SpeedDistribution::homogeneous(1.0), {}, 10, 0),
                 std::invalid_argument);
}

TEST(Table, DsvAndStructured) {
    SweepResult sweep;
    sweep.strategy = Strategy::grouped(2);
    sweep.allocation = AllocationMethod::random;
    sweep.base_seed = 7;
    SummaryStats s{12.5, 0.25, 0.49, 100, 1.0, 30.0};
    sweep.points.push_back({4, s});
    auto table = sweep_table(sweep);
    table.provenance = {{"config", "x"}};
    EXPECT_EQ(render_table(table, TableFormat::dsv),
              "# config: x\n"
              "strategy,allocation,m,mean,stderr,ci95,trials,seed,min,max\n"
              "grouped-2,random,4,12.5,0.25,0.49,100,7,1,30\n");
    const auto json = render_table(table, TableFormat::structured);
    EXPECT_NE(json.find("\"strategy\": \"grouped-2\""), std::string::npos);
    EXPECT_NE(json.find("\"mean\": 12.5"), std::string::npos);
    EXPECT_NE(json.find("\"seed\": 7"), std::string::npos);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);

    const auto lengths = length_table(length_pmf_semi_equal(1000, 3));
    EXPECT_EQ(render_table(lengths, TableFormat::dsv), "bin_start,mass\n500,0.3333333333333333\n250,0.6666666666666666\n");
}

TEST(SweepM, HomogeneousMethodsOrdered) {
    std::vector<std::size_t> ms;
    for (std::size_t m = 2; m <= 32; ++m) ms.push_back(m);
    const auto eq = sweep_m(homogeneous_plan(1, AllocationMethod::equal, 20'000, 3), ms);
    const auto semi = sweep_m(homogeneous_plan(1, AllocationMethod::semi_equal, 20'000, 3), ms);
    const auto rnd = sweep_m(homogeneous_plan(1, AllocationMethod::random, 20'000, 3), ms);
    auto within = [](const SummaryStats& lo, const SummaryStats& hi) {
        return lo.mean <= hi.mean + 2 * std::hypot(lo.ci95_half_width, hi.ci95_half_width);
    };
    for (std::size_t i = 0; i < ms.size(); ++i) {
        EXPECT_TRUE(within(eq.points[i].stats, semi.points[i].stats)) << ms[i];
        EXPECT_TRUE(within(semi.points[i].stats, rnd.points[i].stats)) << ms[i];
    }
}
