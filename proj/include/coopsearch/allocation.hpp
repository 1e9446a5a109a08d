#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coopsearch/model.hpp"

namespace coopsearch {

struct Arc {
    AgentId agent;
    double start = 0.0;
    double length = 0.0;
};

/// One arc per agent. Arcs tile the circle: lengths sum to L within
/// kTilingTolerance and no two arcs overlap.
class Allocation {
public:
    static constexpr double kTilingTolerance = 1e-9;

    /// Throws std::invalid_argument if the arcs do not tile the region.
    Allocation(RegionSpec region, std::vector<Arc> arcs);

    const RegionSpec& region() const noexcept { return region_; }
    std::span<const Arc> arcs() const noexcept { return arcs_; }
    std::size_t size() const noexcept { return arcs_.size(); }

    std::vector<double> starts() const;
    std::vector<double> lengths() const;

private:
    RegionSpec region_;
    std::vector<Arc> arcs_;
};

Allocation allocate_equal(const RegionSpec& region, std::size_t agents);

/// Binary-halving registration order: agent 0 at 0, then each newcomer takes
/// the second half of the currently largest arc (ties: smallest start).
Allocation allocate_semi_equal(const RegionSpec& region, std::size_t agents);

/// i.i.d. uniform starts; each arc runs clockwise to the next start.
Allocation allocate_random(const RegionSpec& region, std::size_t agents, std::uint64_t seed);
Allocation allocate_random(const RegionSpec& region, std::size_t agents, SplitMix64& rng);

/// Arc lengths v_i L / sum(v), laid consecutively from 0 in input order.
Allocation allocate_proportional(const RegionSpec& region, std::span<const double> speeds);

/// Circular gaps between `starts` (any order): gap k runs from starts[k] to
/// the next start clockwise. Coincident starts are ordered by index; a single
/// start owns the whole circle.
std::vector<double> circular_gaps(std::span<const double> starts, const RegionSpec& region);

/// Probability mass over subregion lengths.
///
/// Exact distributions hold point masses at length values. Binned
/// distributions hold unit-width bins [k, k+1) (the last one truncated at L);
/// their moments use bin midpoints.
class LengthDistribution {
public:
    enum class Kind { exact, estimated };

    struct Entry {
        double length;  // point value, or bin start when binned
        double mass;
    };

    static constexpr double kExactTolerance = 1e-9;

    static LengthDistribution exact(double region_length, std::vector<Entry> atoms);
    static LengthDistribution binned(double region_length, Kind kind, std::vector<double> masses);

    Kind kind() const noexcept { return kind_; }
    bool is_binned() const noexcept { return binned_; }
    double region_length() const noexcept { return region_length_; }
    std::span<const Entry> entries() const noexcept { return entries_; }

    /// Representative length of entry i (the point value, or the bin midpoint).
    double value(std::size_t i) const noexcept;

    /// Mass at `length`: the matching atom, or the bin containing it. Zero if absent.
    double mass_at(double length) const noexcept;

    double mean() const noexcept;

private:
    LengthDistribution(double region_length, Kind kind, bool binned, std::vector<Entry> entries);

    double region_length_;
    Kind kind_;
    bool binned_;
    std::vector<Entry> entries_;
};

LengthDistribution length_pmf_equal(double region_length, std::size_t agents);
LengthDistribution length_pmf_semi_equal(double region_length, std::size_t agents);

/// Unit-bin histogram of all gaps over `trials` random allocations.
LengthDistribution estimate_length_pmf(double region_length, std::size_t agents, std::uint64_t trials,
                                       std::uint64_t seed, unsigned workers = 1);

/// Unit-bin masses of the spacing density (m-1)/L (1 - l/L)^(m-2), integrated
/// exactly over each bin. Requires m >= 2.
LengthDistribution spacing_pmf_oracle(double region_length, std::size_t agents);

}  // namespace coopsearch
