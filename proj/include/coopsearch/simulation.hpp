#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coopsearch/model.hpp"

namespace coopsearch {

class Strategy {
public:
    enum class Kind { one_directional, two_directional, grouped, proportional };

    static Strategy one_directional() noexcept { return Strategy(Kind::one_directional, 0); }
    static Strategy two_directional() noexcept { return Strategy(Kind::two_directional, 0); }
    static Strategy grouped(std::size_t group_size);
    static Strategy proportional() noexcept { return Strategy(Kind::proportional, 0); }

    Kind kind() const noexcept { return kind_; }
    /// Agents per group; zero unless kind() == grouped.
    std::size_t group_size() const noexcept { return group_size_; }

    /// one-directional, two-directional, grouped-<n>, proportional
    std::string name() const;

    friend bool operator==(const Strategy&, const Strategy&) = default;

private:
    Strategy(Kind kind, std::size_t group_size) noexcept : kind_(kind), group_size_(group_size) {}

    Kind kind_;
    std::size_t group_size_;
};

/// Throws std::invalid_argument for unknown names.
Strategy parse_strategy(const std::string& name);

struct TrialSetup {
    RegionSpec region{1.0};
    std::vector<AgentProfile> agents;
    SolutionPlacement solution;
    Strategy strategy = Strategy::one_directional();
};

/// Throws std::invalid_argument when the setup breaks its invariants.
void validate(const TrialSetup& setup);

struct TrialOutcome {
    double time_to_solution = 0.0;
    AgentId finder;
    std::optional<std::size_t> finder_group;
};

/// Consecutive groups of `group_size` agents in sorted-start order; the last
/// group is smaller when the size does not divide the agent count.
struct GroupingPolicy {
    std::size_t group_size = 1;
};

/// Every agent sweeps clockwise at full speed past its neighbours' starts.
/// Time is min_i wrap(s_i, x) / v_i; ties go to the lowest agent id.
TrialOutcome simulate_one_directional(const TrialSetup& setup);

/// Every agent sweeps both ways at v/2 indefinitely.
TrialOutcome simulate_two_directional(const TrialSetup& setup);

/// Each group pools its members' gaps into one arc and sweeps it at the summed
/// rate, splitting the arc among members in proportion to speed.
TrialOutcome simulate_grouped(const TrialSetup& setup, const GroupingPolicy& policy);

/// Arcs from allocate_proportional; the owner sweeps its own arc.
TrialOutcome simulate_proportional(const RegionSpec& region, std::span<const double> speeds, double solution);

/// Dispatches on setup.strategy. Proportional uses the agents' speeds in id order.
TrialOutcome simulate(const TrialSetup& setup);

/// Where two facing sweeps over a gap meet: (left share, right share).
std::pair<double, double> meeting_split(double gap, double left_speed, double right_speed);

/// v_max / v_min < (l_min + l_max) / l_max, i.e. no agent reaches past its
/// neighbour's arc before the neighbour finishes it.
bool no_overtake_condition(double v_min, double v_max, double l_min, double l_max);

}  // namespace coopsearch
