#include "coopsearch/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "coopsearch/allocation.hpp"
#include "parallel.hpp"

namespace coopsearch {

std::string to_string(AllocationMethod method) {
    switch (method) {
        case AllocationMethod::equal: return "equal";
        case AllocationMethod::semi_equal: return "semi-equal";
        case AllocationMethod::random: return "random";
        case AllocationMethod::proportional: return "proportional";
    }
    return "unknown";
}

AllocationMethod parse_allocation(const std::string& name) {
    if (name == "equal") return AllocationMethod::equal;
    if (name == "semi-equal") return AllocationMethod::semi_equal;
    if (name == "random") return AllocationMethod::random;
    if (name == "proportional") return AllocationMethod::proportional;
    throw std::invalid_argument("unknown allocation '" + name + "' (expected equal, semi-equal, random, proportional)");
}

void validate(const TrialPlan& plan) {
    if (plan.agents == 0) throw std::invalid_argument("at least one agent is required");
    if (plan.trials == 0) throw std::invalid_argument("at least one trial is required");
    const bool proportional_strategy = plan.strategy.kind() == Strategy::Kind::proportional;
    const bool proportional_allocation = plan.allocation == AllocationMethod::proportional;
    if (proportional_strategy != proportional_allocation) {
        throw std::invalid_argument("unsupported pair: strategy " + plan.strategy.name() + " with allocation " +
                                    to_string(plan.allocation));
    }
    if (plan.strategy.kind() == Strategy::Kind::grouped && plan.strategy.group_size() > plan.agents) {
        throw std::invalid_argument("group size " + std::to_string(plan.strategy.group_size()) + " exceeds " +
                                    std::to_string(plan.agents) + " agents");
    }
    if (const auto* fixed = std::get_if<std::vector<double>>(&plan.speeds)) {
        if (fixed->size() != plan.agents) {
            throw std::invalid_argument("fixed speed list has " + std::to_string(fixed->size()) +
                                        " entries for " + std::to_string(plan.agents) + " agents");
        }
        for (double v : *fixed) {
            if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("speeds must be positive");
        }
    }
}

// RunningStats

void RunningStats::add(double x) noexcept {
    if (n_ == 0) {
        min_ = max_ = x;
    } else {
        min_ = std::min(min_, x);
        max_ = std::max(max_, x);
    }
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) noexcept {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    mean_ += delta * nb / n;
    m2_ += other.m2_ + delta * delta * na * nb / n;
    n_ += other.n_;
    min_ = std::min(min_, other.min_);
    max_ = std::max(max_, other.max_);
}

SummaryStats RunningStats::summary() const noexcept {
    SummaryStats s;
    s.trials = n_;
    s.mean = mean_;
    s.min = min_;
    s.max = max_;
    if (n_ > 1) {
        const double variance = m2_ / static_cast<double>(n_ - 1);
        s.std_error = std::sqrt(variance / static_cast<double>(n_));
    }
    s.ci95_half_width = 1.96 * s.std_error;
    // rounding can put the running mean a hair outside [min, max] for constant samples
    s.mean = std::clamp(s.mean, s.min, s.max);
    return s;
}

namespace {

// Per-run sampling state: fixed starts are computed once, the setup buffer is reused.
class TrialSampler {
public:
    explicit TrialSampler(const TrialPlan& plan) : plan_(plan) {
        validate(plan);
        setup_.region = plan.region;
        setup_.strategy = plan.strategy;
        setup_.agents.resize(plan.agents);
        for (std::size_t k = 0; k < plan.agents; ++k) setup_.agents[k].id = AgentId{k};
        switch (plan.allocation) {
            case AllocationMethod::equal: fixed_starts_ = allocate_equal(plan.region, plan.agents).starts(); break;
            case AllocationMethod::semi_equal:
                fixed_starts_ = allocate_semi_equal(plan.region, plan.agents).starts();
                break;
            case AllocationMethod::random:
            case AllocationMethod::proportional: break;
        }
        if (!fixed_starts_.empty()) {
            for (std::size_t k = 0; k < plan.agents; ++k) setup_.agents[k].start = fixed_starts_[k];
        }
        if (const auto* fixed = std::get_if<std::vector<double>>(&plan.speeds)) {
            for (std::size_t k = 0; k < plan.agents; ++k) setup_.agents[k].speed = (*fixed)[k];
        }
        speeds_.resize(plan.agents);
    }

    const TrialSetup& draw(std::uint64_t index) {
        SplitMix64 rng(derive_seed(plan_.base_seed, index));
        if (const auto* pmf = std::get_if<SpeedDistribution>(&plan_.speeds)) {
            for (auto& a : setup_.agents) a.speed = pmf->sample(rng);
        }
        if (plan_.allocation == AllocationMethod::random) {
            for (auto& a : setup_.agents) a.start = sample_solution(plan_.region, rng).position;
        } else if (plan_.allocation == AllocationMethod::proportional) {
            for (std::size_t k = 0; k < speeds_.size(); ++k) speeds_[k] = setup_.agents[k].speed;
            const auto alloc = allocate_proportional(plan_.region, speeds_);
            for (std::size_t k = 0; k < speeds_.size(); ++k) setup_.agents[k].start = alloc.arcs()[k].start;
        }
        setup_.solution = sample_solution(plan_.region, rng);
        return setup_;
    }

    double time(std::uint64_t index) {
        const auto& setup = draw(index);
        if (plan_.allocation == AllocationMethod::proportional) {
            return simulate_proportional(setup.region, speeds_, setup.solution.position).time_to_solution;
        }
        return simulate(setup).time_to_solution;
    }

private:
    const TrialPlan& plan_;
    TrialSetup setup_;
    std::vector<double> fixed_starts_;
    std::vector<double> speeds_;
};

constexpr std::uint64_t kChunkTrials = 8192;

}  // namespace

TrialSetup draw_trial(const TrialPlan& plan, std::uint64_t index) { return TrialSampler(plan).draw(index); }

double trial_time(const TrialPlan& plan, std::uint64_t index) { return TrialSampler(plan).time(index); }

SummaryStats run_trials(const TrialPlan& plan, unsigned workers) {
    validate(plan);
    const auto chunks = static_cast<std::size_t>((plan.trials + kChunkTrials - 1) / kChunkTrials);
    std::vector<RunningStats> partial(chunks);
    detail::parallel_chunks(chunks, workers, [&](unsigned, std::size_t c) {
        TrialSampler sampler(plan);
        const std::uint64_t first = c * kChunkTrials;
        const std::uint64_t last = std::min(plan.trials, first + kChunkTrials);
        RunningStats stats;
        for (std::uint64_t t = first; t < last; ++t) stats.add(sampler.time(t));
        partial[c] = stats;
    });
    RunningStats total;
    for (const auto& p : partial) total.merge(p);
    return total.summary();
}

SweepResult sweep_m(const TrialPlan& plan, const std::vector<std::size_t>& agent_counts, unsigned workers) {
    if (agent_counts.empty()) throw std::invalid_argument("sweep needs at least one agent count");
    for (std::size_t i = 1; i < agent_counts.size(); ++i) {
        if (agent_counts[i] <= agent_counts[i - 1]) {
            throw std::invalid_argument("sweep agent counts must be strictly increasing");
        }
    }
    SweepResult result;
    result.strategy = plan.strategy;
    result.allocation = plan.allocation;
    result.region_length = plan.region.length();
    result.base_seed = plan.base_seed;
    if (const auto* pmf = std::get_if<SpeedDistribution>(&plan.speeds)) result.speeds = pmf->to_string();
    for (std::size_t m : agent_counts) {
        TrialPlan point = plan;
        point.agents = m;
        result.points.push_back({m, run_trials(point, workers)});
    }
    return result;
}

std::string ComparisonTarget::label() const {
    if (strategy.kind() == Strategy::Kind::one_directional && allocation != AllocationMethod::random) {
        return to_string(allocation);
    }
    return strategy.name();
}

ComparisonTarget parse_target(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) throw std::invalid_argument("target '" + text + "' is not of the form name:m");
    const std::string name = text.substr(0, colon);
    std::size_t m = 0;
    const char* first = text.data() + colon + 1;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, m);
    if (ec != std::errc{} || ptr != last || first == last || m == 0) {
        throw std::invalid_argument("target '" + text + "' has an invalid agent count");
    }
    if (name == "equal" || name == "semi-equal" || name == "random") {
        return {Strategy::one_directional(), parse_allocation(name), m};
    }
    const Strategy s = parse_strategy(name);
    const auto alloc = s.kind() == Strategy::Kind::proportional ? AllocationMethod::proportional : AllocationMethod::random;
    return {s, alloc, m};
}

std::vector<ComparisonRow> compare_strategies(const RegionSpec& region, const SpeedDistribution& speeds,
                                              const std::vector<ComparisonTarget>& targets, std::uint64_t trials,
                                              std::uint64_t base_seed, unsigned workers) {
    if (targets.empty()) throw std::invalid_argument("comparison needs at least one target");
    std::vector<TrialPlan> plans;
    for (const auto& t : targets) {
        TrialPlan plan{region, t.agents, t.strategy, t.allocation, speeds, trials, base_seed};
        validate(plan);
        plans.push_back(std::move(plan));
    }
    std::vector<ComparisonRow> rows;
    for (std::size_t i = 0; i < plans.size(); ++i) rows.push_back({targets[i], run_trials(plans[i], workers)});
    return rows;
}

}  // namespace coopsearch
