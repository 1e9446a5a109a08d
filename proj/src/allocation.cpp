#include "coopsearch/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace coopsearch {

namespace {

void require_agents(std::size_t agents) {
    if (agents == 0) throw std::invalid_argument("at least one agent is required");
}

std::size_t bin_count(double region_length) { return static_cast<std::size_t>(std::ceil(region_length)); }

// Arc of agent k runs from its start to the next start clockwise.
Allocation arcs_from_starts(const RegionSpec& region, std::span<const double> starts) {
    const auto gaps = circular_gaps(starts, region);
    std::vector<Arc> arcs;
    arcs.reserve(starts.size());
    for (std::size_t k = 0; k < starts.size(); ++k) arcs.push_back({AgentId{k}, starts[k], gaps[k]});
    return Allocation(region, std::move(arcs));
}

}  // namespace

Allocation::Allocation(RegionSpec region, std::vector<Arc> arcs) : region_(region), arcs_(std::move(arcs)) {
    if (arcs_.empty()) throw std::invalid_argument("allocation needs at least one arc");
    const double L = region_.length();
    const double tol = kTilingTolerance * std::max(1.0, L);
    double total = 0.0;
    for (const auto& a : arcs_) {
        if (!region_.contains(a.start)) throw std::invalid_argument("arc start outside the region");
        if (!(a.length >= 0.0)) throw std::invalid_argument("arc length must be non-negative");
        total += a.length;
    }
    if (std::abs(total - L) > tol) {
        throw std::invalid_argument("arc lengths sum to " + format_real(total) + ", expected " + format_real(L));
    }
    std::vector<const Arc*> order;
    order.reserve(arcs_.size());
    for (const auto& a : arcs_) order.push_back(&a);
    std::stable_sort(order.begin(), order.end(), [](const Arc* a, const Arc* b) { return a->start < b->start; });
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Arc& cur = *order[i];
        const double next_start = i + 1 < order.size() ? order[i + 1]->start : order.front()->start + L;
        if (cur.start + cur.length > next_start + tol) throw std::invalid_argument("arcs overlap");
    }
}

std::vector<double> Allocation::starts() const {
    std::vector<double> out;
    out.reserve(arcs_.size());
    for (const auto& a : arcs_) out.push_back(a.start);
    return out;
}

std::vector<double> Allocation::lengths() const {
    std::vector<double> out;
    out.reserve(arcs_.size());
    for (const auto& a : arcs_) out.push_back(a.length);
    return out;
}

std::vector<double> circular_gaps(std::span<const double> starts, const RegionSpec& region) {
    const std::size_t m = starts.size();
    std::vector<double> gaps(m, 0.0);
    if (m == 0) return gaps;
    if (m == 1) {
        gaps[0] = region.length();
        return gaps;
    }
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return starts[a] < starts[b] || (starts[a] == starts[b] && a < b);
    });
    for (std::size_t i = 0; i + 1 < m; ++i) gaps[order[i]] = starts[order[i + 1]] - starts[order[i]];
    gaps[order[m - 1]] = starts[order[0]] + region.length() - starts[order[m - 1]];
    return gaps;
}

Allocation allocate_equal(const RegionSpec& region, std::size_t agents) {
    require_agents(agents);
    const double L = region.length();
    const double len = L / static_cast<double>(agents);
    std::vector<Arc> arcs;
    arcs.reserve(agents);
    for (std::size_t k = 0; k < agents; ++k) {
        arcs.push_back({AgentId{k}, static_cast<double>(k) * L / static_cast<double>(agents), len});
    }
    return Allocation(region, std::move(arcs));
}

Allocation allocate_semi_equal(const RegionSpec& region, std::size_t agents) {
    require_agents(agents);
    struct Open {
        double start;
        double length;
        std::size_t agent;
    };
    // largest first, then smallest start
    auto cmp = [](const Open& a, const Open& b) {
        return a.length > b.length || (a.length == b.length && a.start < b.start);
    };
    std::set<Open, decltype(cmp)> open(cmp);
    open.insert({0.0, region.length(), 0});
    for (std::size_t k = 1; k < agents; ++k) {
        const Open largest = *open.begin();
        open.erase(open.begin());
        const double half = largest.length / 2.0;
        open.insert({largest.start, half, largest.agent});
        open.insert({largest.start + half, half, k});
    }
    std::vector<Arc> arcs(agents);
    for (const auto& o : open) arcs[o.agent] = {AgentId{o.agent}, o.start, o.length};
    return Allocation(region, std::move(arcs));
}

Allocation allocate_random(const RegionSpec& region, std::size_t agents, SplitMix64& rng) {
    require_agents(agents);
    std::vector<double> starts(agents);
    for (auto& s : starts) s = sample_solution(region, rng).position;
    return arcs_from_starts(region, starts);
}

Allocation allocate_random(const RegionSpec& region, std::size_t agents, std::uint64_t seed) {
    SplitMix64 rng(derive_seed(seed, 0));
    return allocate_random(region, agents, rng);
}

Allocation allocate_proportional(const RegionSpec& region, std::span<const double> speeds) {
    if (speeds.empty()) throw std::invalid_argument("at least one speed is required");
    double total = 0.0;
    for (double v : speeds) {
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("speeds must be positive");
        total += v;
    }
    const double L = region.length();
    std::vector<Arc> arcs;
    arcs.reserve(speeds.size());
    double cursor = 0.0;
    for (std::size_t k = 0; k < speeds.size(); ++k) {
        const double len = speeds[k] * L / total;
        arcs.push_back({AgentId{k}, std::min(cursor, std::nextafter(L, 0.0)), len});
        cursor += len;
    }
    return Allocation(region, std::move(arcs));
}

// LengthDistribution

LengthDistribution::LengthDistribution(double region_length, Kind kind, bool binned, std::vector<Entry> entries)
    : region_length_(region_length), kind_(kind), binned_(binned), entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("length distribution is empty");
    double total = 0.0;
    for (const auto& e : entries_) {
        if (!(e.length >= 0.0 && e.length <= region_length_)) {
            throw std::invalid_argument("subregion length " + format_real(e.length) + " outside [0, L]");
        }
        if (!(e.mass >= 0.0)) throw std::invalid_argument("negative mass in length distribution");
        total += e.mass;
    }
    if (std::abs(total - 1.0) > kExactTolerance) {
        throw std::invalid_argument("length masses sum to " + format_real(total) + ", not 1");
    }
}

LengthDistribution LengthDistribution::exact(double region_length, std::vector<Entry> atoms) {
    return LengthDistribution(region_length, Kind::exact, false, std::move(atoms));
}

LengthDistribution LengthDistribution::binned(double region_length, Kind kind, std::vector<double> masses) {
    if (masses.size() != bin_count(region_length)) {
        throw std::invalid_argument("binned distribution needs ceil(L) unit bins");
    }
    std::vector<Entry> entries;
    entries.reserve(masses.size());
    for (std::size_t k = 0; k < masses.size(); ++k) entries.push_back({static_cast<double>(k), masses[k]});
    return LengthDistribution(region_length, kind, true, std::move(entries));
}

double LengthDistribution::value(std::size_t i) const noexcept {
    const double lo = entries_[i].length;
    if (!binned_) return lo;
    const double hi = std::min(lo + 1.0, region_length_);
    return 0.5 * (lo + hi);
}

double LengthDistribution::mass_at(double length) const noexcept {
    if (binned_) {
        if (!(length >= 0.0 && length <= region_length_)) return 0.0;
        auto k = static_cast<std::size_t>(std::floor(length));
        if (k >= entries_.size()) k = entries_.size() - 1;
        return entries_[k].mass;
    }
    for (const auto& e : entries_) {
        if (std::abs(e.length - length) <= kExactTolerance * std::max(1.0, region_length_)) return e.mass;
    }
    return 0.0;
}

double LengthDistribution::mean() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) s += entries_[i].mass * value(i);
    return s;
}

LengthDistribution length_pmf_equal(double region_length, std::size_t agents) {
    require_agents(agents);
    RegionSpec region(region_length);
    return LengthDistribution::exact(region_length, {{region_length / static_cast<double>(agents), 1.0}});
}

LengthDistribution length_pmf_semi_equal(double region_length, std::size_t agents) {
    require_agents(agents);
    RegionSpec region(region_length);
    // n = floor(log2 m)
    std::size_t low = 1;
    while (low * 2 <= agents) low *= 2;
    if (low == agents) return length_pmf_equal(region_length, agents);
    const std::size_t high = low * 2;
    const double m = static_cast<double>(agents);
    return LengthDistribution::exact(region_length,
                                     {{region_length / static_cast<double>(low), static_cast<double>(high - agents) / m},
                                      {region_length / static_cast<double>(high), static_cast<double>(2 * agents - high) / m}});
}

LengthDistribution estimate_length_pmf(double region_length, std::size_t agents, std::uint64_t trials,
                                       std::uint64_t seed, unsigned workers) {
    require_agents(agents);
    if (trials == 0) throw std::invalid_argument("at least one trial is required");
    const RegionSpec region(region_length);
    const std::size_t bins = bin_count(region_length);
    constexpr std::uint64_t kChunk = 4096;
    const std::size_t chunks = static_cast<std::size_t>((trials + kChunk - 1) / kChunk);
    const unsigned pool = detail::resolve_workers(workers);
    std::vector<std::vector<std::uint64_t>> counts(pool, std::vector<std::uint64_t>(bins, 0));

    detail::parallel_chunks(chunks, pool, [&](unsigned w, std::size_t c) {
        std::vector<double> starts(agents);
        auto& hist = counts[w];
        const std::uint64_t first = c * kChunk;
        const std::uint64_t last = std::min<std::uint64_t>(trials, first + kChunk);
        for (std::uint64_t t = first; t < last; ++t) {
            SplitMix64 rng(derive_seed(seed, t));
            for (auto& s : starts) s = sample_solution(region, rng).position;
            for (double g : circular_gaps(starts, region)) {
                auto k = static_cast<std::size_t>(g);
                hist[std::min(k, bins - 1)] += 1;
            }
        }
    });

    std::vector<std::uint64_t> total(bins, 0);
    for (const auto& h : counts)
        for (std::size_t k = 0; k < bins; ++k) total[k] += h[k];
    const double n = static_cast<double>(trials) * static_cast<double>(agents);
    std::vector<double> masses(bins);
    for (std::size_t k = 0; k < bins; ++k) masses[k] = static_cast<double>(total[k]) / n;
    return LengthDistribution::binned(region_length, LengthDistribution::Kind::estimated, std::move(masses));
}

LengthDistribution spacing_pmf_oracle(double region_length, std::size_t agents) {
    if (agents < 2) throw std::invalid_argument("spacing oracle needs at least two agents");
    const RegionSpec region(region_length);
    const std::size_t bins = bin_count(region_length);
    const double exponent = static_cast<double>(agents - 1);
    // CDF of one spacing: 1 - (1 - l/L)^(m-1)
    auto survival = [&](double l) { return std::pow(1.0 - std::min(l, region_length) / region_length, exponent); };
    std::vector<double> masses(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        const double lo = static_cast<double>(k);
        masses[k] = survival(lo) - survival(lo + 1.0);
    }
    return LengthDistribution::binned(region_length, LengthDistribution::Kind::exact, std::move(masses));
}

}  // namespace coopsearch
