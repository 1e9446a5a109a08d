#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coopsearch/allocation.hpp"
#include "coopsearch/model.hpp"

namespace coopsearch {

/// Joint pmf over (speed, subregion length) pairs.
class JointSpeedLengthPmf {
public:
    struct Atom {
        double speed;
        double length;
        double mass;
    };

    static constexpr double kNormalizationTolerance = 1e-12;

    explicit JointSpeedLengthPmf(std::vector<Atom> atoms);

    std::span<const Atom> atoms() const noexcept { return atoms_; }

private:
    std::vector<Atom> atoms_;
};

/// Product pmf p_v(v) p_l(l), using representative lengths for binned p_l.
JointSpeedLengthPmf product_pmf(const SpeedDistribution& speeds, const LengthDistribution& lengths);

/// Probability that the solution lies in some subregion of length l: m p_l(l) l / L.
double solution_in_region_prob(const LengthDistribution& lengths, std::size_t agents, double region_length,
                               double length);

/// m/(2L) * sum(mass * l^2 / v).
double expected_time_joint(const JointSpeedLengthPmf& pmf, std::size_t agents, double region_length);

/// m/(2L) * E(1/v) * E(l^2), valid when speed and length are independent.
double expected_time_independent(const SpeedDistribution& speeds, const LengthDistribution& lengths,
                                 std::size_t agents, double region_length);

/// L / (2 m V).
double expected_time_equal(double region_length, std::size_t agents, double speed);

/// Halving-order pmf through the independent form; equals the equal-split time
/// exactly when m is a power of two.
double expected_time_semi_equal(double region_length, std::size_t agents, double speed);

/// Random starts through the binned spacing oracle. m = 1 is a single arc of length L.
double expected_time_random(double region_length, std::size_t agents, const SpeedDistribution& speeds);

/// L / (2 sum(v)): every proportional arc finishes at L / sum(v).
double expected_time_proportional(double region_length, std::span<const double> speeds);

/// E[L / (2 sum(v))] over m speeds drawn i.i.d. from `speeds`, by exact
/// enumeration of the multinomial count vectors.
double expected_time_proportional_resampled(double region_length, std::size_t agents,
                                            const SpeedDistribution& speeds);

double mean_inverse_speed(const SpeedDistribution& speeds) noexcept;

double second_moment(const LengthDistribution& lengths) noexcept;

}  // namespace coopsearch
