#include "coopsearch/model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace coopsearch {

RegionSpec::RegionSpec(double length) : length_(length) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("region length must be a positive finite number, got " + format_real(length));
    }
}

double wrap_distance(double from, double to, const RegionSpec& region) {
    if (!region.contains(from) || !region.contains(to)) {
        throw std::invalid_argument("position outside [0, " + format_real(region.length()) + ")");
    }
    double d = to - from;
    if (d < 0.0) {
        d += region.length();
        // tiny negative differences round up to L
        if (d >= region.length()) d = std::nextafter(region.length(), 0.0);
    }
    return d;
}

double wrap_position(double position, const RegionSpec& region) noexcept {
    const double L = region.length();
    double p = std::fmod(position, L);
    if (p < 0.0) p += L;
    if (p >= L) p = 0.0;
    return p;
}

void validate(const AgentProfile& agent, const RegionSpec& region) {
    if (!(agent.speed > 0.0) || !std::isfinite(agent.speed)) {
        throw std::invalid_argument("agent " + std::to_string(agent.id.value) + " has non-positive speed");
    }
    if (!region.contains(agent.start)) {
        throw std::invalid_argument("agent " + std::to_string(agent.id.value) + " starts outside the region");
    }
}

SpeedDistribution::SpeedDistribution(std::vector<SpeedAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("speed distribution needs at least one atom");
    double total = 0.0;
    for (const auto& a : atoms_) {
        if (!(a.speed > 0.0) || !std::isfinite(a.speed)) {
            throw std::invalid_argument("speeds must be positive, got " + format_real(a.speed));
        }
        if (!(a.probability > 0.0 && a.probability <= 1.0)) {
            throw std::invalid_argument("probabilities must lie in (0, 1], got " + format_real(a.probability));
        }
        total += a.probability;
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
        throw std::invalid_argument("speed probabilities sum to " + format_real(total) + ", not 1");
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
            if (atoms_[i].speed == atoms_[j].speed) {
                throw std::invalid_argument("duplicate speed atom " + format_real(atoms_[i].speed));
            }
        }
    }
    cumulative_.reserve(atoms_.size());
    double acc = 0.0;
    for (const auto& a : atoms_) {
        acc += a.probability;
        cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
}

SpeedDistribution SpeedDistribution::homogeneous(double speed) { return SpeedDistribution({{speed, 1.0}}); }

SpeedDistribution SpeedDistribution::reference_mix() {
    return SpeedDistribution({{0.5, 0.3}, {1.0, 0.3}, {1.375, 0.4}});
}

double SpeedDistribution::mean() const noexcept {
    double s = 0.0;
    for (const auto& a : atoms_) s += a.speed * a.probability;
    return s;
}

double SpeedDistribution::quantile(double u) const noexcept {
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].speed;
}

std::string SpeedDistribution::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i) out += ',';
        out += format_real(atoms_[i].speed);
        out += ':';
        out += format_real(atoms_[i].probability);
    }
    return out;
}

bool operator==(const SpeedDistribution& a, const SpeedDistribution& b) {
    return std::equal(a.atoms_.begin(), a.atoms_.end(), b.atoms_.begin(), b.atoms_.end(),
                      [](const SpeedAtom& x, const SpeedAtom& y) {
                          return x.speed == y.speed && x.probability == y.probability;
                      });
}

namespace {

double parse_real(const std::string& token) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) throw std::invalid_argument("not a number: '" + token + "'");
    return value;
}

}  // namespace

SpeedDistribution parse_speed_distribution(const std::string& text) {
    std::vector<SpeedAtom> atoms;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw std::invalid_argument("speed atom '" + item + "' is not of the form speed:mass");
        }
        atoms.push_back({parse_real(item.substr(0, colon)), parse_real(item.substr(colon + 1))});
    }
    return SpeedDistribution(std::move(atoms));
}

SolutionPlacement sample_solution(const RegionSpec& region, SplitMix64& rng) noexcept {
    double x = rng.uniform() * region.length();
    if (x >= region.length()) x = std::nextafter(region.length(), 0.0);
    return {x};
}

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), ptr);
}

}  // namespace coopsearch
