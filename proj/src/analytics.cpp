#include "coopsearch/analytics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace coopsearch {

namespace {

void require_positive(std::size_t agents, double region_length) {
    if (agents == 0) throw std::invalid_argument("at least one agent is required");
    RegionSpec check(region_length);
}

void require_speed(double speed) {
    if (!(speed > 0.0) || !std::isfinite(speed)) throw std::invalid_argument("speed must be positive");
}

}  // namespace

JointSpeedLengthPmf::JointSpeedLengthPmf(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("joint pmf is empty");
    double total = 0.0;
    for (const auto& a : atoms_) {
        require_speed(a.speed);
        if (!(a.length >= 0.0)) throw std::invalid_argument("joint pmf length must be non-negative");
        if (!(a.mass >= 0.0)) throw std::invalid_argument("joint pmf mass must be non-negative");
        total += a.mass;
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
        throw std::invalid_argument("joint pmf masses sum to " + format_real(total) + ", not 1");
    }
}

JointSpeedLengthPmf product_pmf(const SpeedDistribution& speeds, const LengthDistribution& lengths) {
    std::vector<JointSpeedLengthPmf::Atom> atoms;
    const auto entries = lengths.entries();
    atoms.reserve(speeds.size() * entries.size());
    for (const auto& v : speeds.atoms()) {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            atoms.push_back({v.speed, lengths.value(i), v.probability * entries[i].mass});
        }
    }
    // binned masses are only normalized to ~1e-13; rescale to the joint tolerance
    double total = 0.0;
    for (const auto& a : atoms) total += a.mass;
    for (auto& a : atoms) a.mass /= total;
    return JointSpeedLengthPmf(std::move(atoms));
}

double solution_in_region_prob(const LengthDistribution& lengths, std::size_t agents, double region_length,
                               double length) {
    require_positive(agents, region_length);
    if (!(length >= 0.0 && length <= region_length)) {
        throw std::invalid_argument("length " + format_real(length) + " outside [0, L]");
    }
    const double l = lengths.is_binned()
                         ? lengths.value(std::min(static_cast<std::size_t>(length), lengths.entries().size() - 1))
                         : length;
    return static_cast<double>(agents) * lengths.mass_at(length) * l / region_length;
}

double expected_time_joint(const JointSpeedLengthPmf& pmf, std::size_t agents, double region_length) {
    require_positive(agents, region_length);
    double s = 0.0;
    for (const auto& a : pmf.atoms()) {
        if (a.length > region_length) throw std::invalid_argument("joint pmf length exceeds L");
        s += a.mass * a.length * a.length / a.speed;
    }
    return static_cast<double>(agents) / (2.0 * region_length) * s;
}

double expected_time_independent(const SpeedDistribution& speeds, const LengthDistribution& lengths,
                                 std::size_t agents, double region_length) {
    require_positive(agents, region_length);
    if (lengths.region_length() != region_length) {
        throw std::invalid_argument("length distribution built for a different region");
    }
    return static_cast<double>(agents) / (2.0 * region_length) * mean_inverse_speed(speeds) * second_moment(lengths);
}

double expected_time_equal(double region_length, std::size_t agents, double speed) {
    require_positive(agents, region_length);
    require_speed(speed);
    return region_length / (2.0 * static_cast<double>(agents) * speed);
}

double expected_time_semi_equal(double region_length, std::size_t agents, double speed) {
    require_speed(speed);
    return expected_time_independent(SpeedDistribution::homogeneous(speed),
                                     length_pmf_semi_equal(region_length, agents), agents, region_length);
}

double expected_time_random(double region_length, std::size_t agents, const SpeedDistribution& speeds) {
    require_positive(agents, region_length);
    const auto lengths = agents == 1 ? LengthDistribution::exact(region_length, {{region_length, 1.0}})
                                     : spacing_pmf_oracle(region_length, agents);
    return expected_time_independent(speeds, lengths, agents, region_length);
}

double expected_time_proportional(double region_length, std::span<const double> speeds) {
    RegionSpec check(region_length);
    if (speeds.empty()) throw std::invalid_argument("at least one speed is required");
    double total = 0.0;
    for (double v : speeds) {
        require_speed(v);
        total += v;
    }
    return region_length / (2.0 * total);
}

double expected_time_proportional_resampled(double region_length, std::size_t agents,
                                            const SpeedDistribution& speeds) {
    require_positive(agents, region_length);
    const auto atoms = speeds.atoms();
    const std::size_t k = atoms.size();
    std::vector<std::size_t> counts(k, 0);
    double expectation = 0.0;

    // log m! - sum log c_i! + sum c_i log p_i
    auto log_multinomial = [&] {
        double lp = std::lgamma(static_cast<double>(agents) + 1.0);
        for (std::size_t i = 0; i < k; ++i) {
            lp -= std::lgamma(static_cast<double>(counts[i]) + 1.0);
            lp += static_cast<double>(counts[i]) * std::log(atoms[i].probability);
        }
        return lp;
    };

    std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t atom, std::size_t remaining) {
        if (atom + 1 == k) {
            counts[atom] = remaining;
            double total_speed = 0.0;
            for (std::size_t i = 0; i < k; ++i) total_speed += static_cast<double>(counts[i]) * atoms[i].speed;
            expectation += std::exp(log_multinomial()) * region_length / (2.0 * total_speed);
            return;
        }
        for (std::size_t c = 0; c <= remaining; ++c) {
            counts[atom] = c;
            recurse(atom + 1, remaining - c);
        }
    };
    recurse(0, agents);
    return expectation;
}

double mean_inverse_speed(const SpeedDistribution& speeds) noexcept {
    double s = 0.0;
    for (const auto& a : speeds.atoms()) s += a.probability / a.speed;
    return s;
}

double second_moment(const LengthDistribution& lengths) noexcept {
    double s = 0.0;
    const auto entries = lengths.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const double l = lengths.value(i);
        s += entries[i].mass * l * l;
    }
    return s;
}

}  // namespace coopsearch
