#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coopsearch/rng.hpp"

namespace coopsearch {

struct AgentId {
    std::size_t value = 0;
    friend constexpr auto operator<=>(AgentId, AgentId) = default;
};

/// Circular search region of circumference `length()`. Positions live in
/// [0, length) and all position arithmetic is modulo length.
class RegionSpec {
public:
    explicit RegionSpec(double length);

    double length() const noexcept { return length_; }
    bool contains(double position) const noexcept { return position >= 0.0 && position < length_; }

    friend bool operator==(const RegionSpec&, const RegionSpec&) = default;

private:
    double length_;
};

/// Clockwise distance from `from` to `to`, in [0, L).
/// Throws std::invalid_argument if either position is outside the region.
double wrap_distance(double from, double to, const RegionSpec& region);

/// Reduces any finite real to [0, L).
double wrap_position(double position, const RegionSpec& region) noexcept;

struct AgentProfile {
    AgentId id;
    double speed = 1.0;
    double start = 0.0;
};

/// Throws std::invalid_argument unless speed > 0 and start lies in the region.
void validate(const AgentProfile& agent, const RegionSpec& region);

struct SpeedAtom {
    double speed;
    double probability;
};

/// Discrete speed pmf. Speeds are positive and pairwise distinct; probabilities
/// lie in (0, 1] and sum to 1 within 1e-12.
class SpeedDistribution {
public:
    static constexpr double kNormalizationTolerance = 1e-12;

    explicit SpeedDistribution(std::vector<SpeedAtom> atoms);

    /// Point mass at `speed` (homogeneous agents).
    static SpeedDistribution homogeneous(double speed);

    /// 0.5 w.p. 0.3, 1.0 w.p. 0.3, 1.375 w.p. 0.4.
    static SpeedDistribution reference_mix();

    std::span<const SpeedAtom> atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    double mean() const noexcept;

    /// Inverse-CDF lookup for u in [0, 1).
    double quantile(double u) const noexcept;

    double sample(SplitMix64& rng) const noexcept { return quantile(rng.uniform()); }

    /// "speed:mass,speed:mass,..." with shortest round-trip numbers.
    std::string to_string() const;

    friend bool operator==(const SpeedDistribution& a, const SpeedDistribution& b);

private:
    std::vector<SpeedAtom> atoms_;
    std::vector<double> cumulative_;
};

/// Parses "speed:mass,speed:mass,...". Throws std::invalid_argument.
SpeedDistribution parse_speed_distribution(const std::string& text);

struct SolutionPlacement {
    double position = 0.0;
};

SolutionPlacement sample_solution(const RegionSpec& region, SplitMix64& rng) noexcept;

/// Shortest decimal representation that round-trips to the same double.
std::string format_real(double value);

}  // namespace coopsearch
