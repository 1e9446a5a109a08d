#include "coopsearch/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "coopsearch/allocation.hpp"

namespace coopsearch {

Strategy Strategy::grouped(std::size_t group_size) {
    if (group_size == 0) throw std::invalid_argument("group size must be at least 1");
    return Strategy(Kind::grouped, group_size);
}

std::string Strategy::name() const {
    switch (kind_) {
        case Kind::one_directional: return "one-directional";
        case Kind::two_directional: return "two-directional";
        case Kind::grouped: return "grouped-" + std::to_string(group_size_);
        case Kind::proportional: return "proportional";
    }
    return "unknown";
}

Strategy parse_strategy(const std::string& name) {
    if (name == "one-directional") return Strategy::one_directional();
    if (name == "two-directional") return Strategy::two_directional();
    if (name == "proportional") return Strategy::proportional();
    constexpr std::string_view prefix = "grouped-";
    if (name.starts_with(prefix)) {
        std::size_t n = 0;
        const char* first = name.data() + prefix.size();
        const char* last = name.data() + name.size();
        auto [ptr, ec] = std::from_chars(first, last, n);
        if (ec == std::errc{} && ptr == last && first != last && n > 0) return Strategy::grouped(n);
    }
    throw std::invalid_argument("unknown strategy '" + name +
                                "' (expected one-directional, two-directional, grouped-<n>, proportional)");
}

void validate(const TrialSetup& setup) {
    if (setup.agents.empty()) throw std::invalid_argument("trial needs at least one agent");
    for (const auto& a : setup.agents) validate(a, setup.region);
    if (!setup.region.contains(setup.solution.position)) throw std::invalid_argument("solution outside the region");
    if (setup.strategy.kind() == Strategy::Kind::grouped && setup.strategy.group_size() > setup.agents.size()) {
        throw std::invalid_argument("group size exceeds the number of agents");
    }
}

namespace {

// argmin with ties to the lowest agent id
template <class TimeFn>
TrialOutcome fastest(const TrialSetup& setup, TimeFn&& time_of) {
    TrialOutcome best{std::numeric_limits<double>::infinity(), AgentId{}, std::nullopt};
    for (const auto& a : setup.agents) {
        const double t = time_of(a);
        if (t < best.time_to_solution || (t == best.time_to_solution && a.id < best.finder)) {
            best.time_to_solution = t;
            best.finder = a.id;
        }
    }
    return best;
}

}  // namespace

TrialOutcome simulate_one_directional(const TrialSetup& setup) {
    validate(setup);
    const double x = setup.solution.position;
    return fastest(setup, [&](const AgentProfile& a) { return wrap_distance(a.start, x, setup.region) / a.speed; });
}

TrialOutcome simulate_two_directional(const TrialSetup& setup) {
    validate(setup);
    const double x = setup.solution.position;
    return fastest(setup, [&](const AgentProfile& a) {
        const double d = std::min(wrap_distance(a.start, x, setup.region), wrap_distance(x, a.start, setup.region));
        return d / (a.speed / 2.0);
    });
}

TrialOutcome simulate_grouped(const TrialSetup& setup, const GroupingPolicy& policy) {
    validate(setup);
    const std::size_t m = setup.agents.size();
    const std::size_t n = policy.group_size;
    if (n == 0 || n > m) throw std::invalid_argument("group size must lie in [1, number of agents]");

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& A = setup.agents[a];
        const auto& B = setup.agents[b];
        return A.start < B.start || (A.start == B.start && A.id < B.id);
    });

    const double L = setup.region.length();
    const double x = setup.solution.position;
    const std::size_t groups = (m + n - 1) / n;

    // The owning group is the one starting nearest counterclockwise of x; among
    // coincident starts the later group owns the non-empty arc.
    std::size_t owner = 0;
    double owner_offset = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < groups; ++g) {
        const double offset = wrap_distance(setup.agents[order[g * n]].start, x, setup.region);
        if (offset <= owner_offset) {
            owner = g;
            owner_offset = offset;
        }
    }

    const std::size_t first = owner * n;
    const std::size_t last = std::min(first + n, m);
    const double group_start = setup.agents[order[first]].start;
    const double group_length =
        groups == 1 ? L
                    : (owner + 1 < groups
                           ? setup.agents[order[last]].start - group_start
                           : setup.agents[order[0]].start + L - group_start);
    double rate = 0.0;
    for (std::size_t j = first; j < last; ++j) rate += setup.agents[order[j]].speed;

    TrialOutcome out{owner_offset / rate, setup.agents[order[last - 1]].id, owner};
    double boundary = 0.0;
    for (std::size_t j = first; j < last; ++j) {
        boundary += group_length * setup.agents[order[j]].speed / rate;
        if (owner_offset < boundary) {
            out.finder = setup.agents[order[j]].id;
            break;
        }
    }
    return out;
}

TrialOutcome simulate_proportional(const RegionSpec& region, std::span<const double> speeds, double solution) {
    if (!region.contains(solution)) throw std::invalid_argument("solution outside the region");
    const Allocation alloc = allocate_proportional(region, speeds);
    const auto arcs = alloc.arcs();
    std::size_t owner = arcs.size() - 1;
    for (std::size_t k = 0; k + 1 < arcs.size(); ++k) {
        if (solution < arcs[k + 1].start) {
            owner = k;
            break;
        }
    }
    const double offset = solution - arcs[owner].start;
    return {offset / speeds[owner], arcs[owner].agent, std::nullopt};
}

TrialOutcome simulate(const TrialSetup& setup) {
    switch (setup.strategy.kind()) {
        case Strategy::Kind::one_directional: return simulate_one_directional(setup);
        case Strategy::Kind::two_directional: return simulate_two_directional(setup);
        case Strategy::Kind::grouped: return simulate_grouped(setup, GroupingPolicy{setup.strategy.group_size()});
        case Strategy::Kind::proportional: {
            validate(setup);
            std::vector<double> speeds;
            speeds.reserve(setup.agents.size());
            for (const auto& a : setup.agents) speeds.push_back(a.speed);
            auto out = simulate_proportional(setup.region, speeds, setup.solution.position);
            out.finder = setup.agents[out.finder.value].id;
            return out;
        }
    }
    throw std::logic_error("unhandled strategy");
}

std::pair<double, double> meeting_split(double gap, double left_speed, double right_speed) {
    if (!(gap >= 0.0)) throw std::invalid_argument("gap must be non-negative");
    if (!(left_speed > 0.0) || !(right_speed > 0.0)) throw std::invalid_argument("speeds must be positive");
    const double total = left_speed + right_speed;
    const double left = gap * left_speed / total;
    // right share is the remainder so the two always sum to the gap
    return {left, gap - left};
}

bool no_overtake_condition(double v_min, double v_max, double l_min, double l_max) {
    if (!(v_min > 0.0) || !(v_max > 0.0)) throw std::invalid_argument("speeds must be positive");
    if (!(l_min >= 0.0) || !(l_max > 0.0) || l_min > l_max) {
        throw std::invalid_argument("lengths must satisfy 0 <= l_min <= l_max, l_max > 0");
    }
    return v_max / v_min < (l_min + l_max) / l_max;
}

}  // namespace coopsearch
