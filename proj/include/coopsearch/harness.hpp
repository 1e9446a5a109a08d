#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "coopsearch/model.hpp"
#include "coopsearch/simulation.hpp"

namespace coopsearch {

enum class AllocationMethod { equal, semi_equal, random, proportional };

std::string to_string(AllocationMethod method);
/// Throws std::invalid_argument for unknown names.
AllocationMethod parse_allocation(const std::string& name);

/// Either one speed per agent (in agent-id order) or a pmf resampled every trial.
using SpeedSource = std::variant<std::vector<double>, SpeedDistribution>;

struct TrialPlan {
    RegionSpec region{1000.0};
    std::size_t agents = 1;
    Strategy strategy = Strategy::one_directional();
    AllocationMethod allocation = AllocationMethod::random;
    SpeedSource speeds = SpeedDistribution::homogeneous(1.0);
    std::uint64_t trials = 1'000'000;
    std::uint64_t base_seed = 0;
};

/// Throws std::invalid_argument for invalid plans and unsupported
/// strategy/allocation pairs. Proportional strategy pairs only with
/// proportional allocation; every other strategy takes equal, semi-equal or
/// random starts.
void validate(const TrialPlan& plan);

struct SummaryStats {
    double mean = 0.0;
    double std_error = 0.0;
    double ci95_half_width = 0.0;
    std::uint64_t trials = 0;
    double min = 0.0;
    double max = 0.0;
};

/// Streaming mean/variance/extrema. Merging is exact up to rounding and is
/// applied in a fixed order by the runner, so results do not depend on the
/// worker count.
class RunningStats {
public:
    void add(double x) noexcept;
    void merge(const RunningStats& other) noexcept;
    SummaryStats summary() const noexcept;
    std::uint64_t count() const noexcept { return n_; }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

/// Draws trial `index` of `plan`: speeds, then random starts (if any), then
/// the solution, all from the stream derive_seed(base_seed, index).
TrialSetup draw_trial(const TrialPlan& plan, std::uint64_t index);

/// Time-to-solution of trial `index`; equals simulate(draw_trial(plan, index)).
double trial_time(const TrialPlan& plan, std::uint64_t index);

/// Runs plan.trials trials. `workers` = 0 uses the hardware concurrency.
/// Output is bit-identical for any worker count.
SummaryStats run_trials(const TrialPlan& plan, unsigned workers = 0);

struct SweepPoint {
    std::size_t agents;
    SummaryStats stats;
};

struct SweepResult {
    Strategy strategy = Strategy::one_directional();
    AllocationMethod allocation = AllocationMethod::random;
    double region_length = 0.0;
    std::string speeds;
    std::uint64_t base_seed = 0;
    std::vector<SweepPoint> points;
};

/// One run_trials per m, every point using the template's base seed.
SweepResult sweep_m(const TrialPlan& plan, const std::vector<std::size_t>& agent_counts, unsigned workers = 0);

struct ComparisonTarget {
    Strategy strategy;
    AllocationMethod allocation;
    std::size_t agents;

    std::string label() const;
};

/// "one-directional:23", "grouped-3:12", or an allocation shorthand
/// "equal:10" / "semi-equal:5" / "random:19" for one-directional search.
ComparisonTarget parse_target(const std::string& text);

struct ComparisonRow {
    ComparisonTarget target;
    SummaryStats stats;
};

/// Runs each target with matched trial count and seed.
std::vector<ComparisonRow> compare_strategies(const RegionSpec& region, const SpeedDistribution& speeds,
                                              const std::vector<ComparisonTarget>& targets, std::uint64_t trials,
                                              std::uint64_t base_seed, unsigned workers = 0);

}  // namespace coopsearch
