#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coopsearch/harness.hpp"
#include "coopsearch/table.hpp"

namespace coopsearch::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { pl_hist, expected, simulate, sweep, compare };

std::string to_string(Command command);

/// Fully validated experiment configuration.
struct ExperimentConfig {
    Command command = Command::simulate;
    double region_length = 1000.0;
    std::vector<std::size_t> agents;
    Strategy strategy = Strategy::one_directional();
    AllocationMethod allocation = AllocationMethod::random;
    SpeedDistribution speeds = SpeedDistribution::reference_mix();
    std::vector<ComparisonTarget> targets;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::optional<std::string> output;
    TableFormat format = TableFormat::dsv;
    bool with_analytic = false;

    /// Command line that regenerates the same output (worker count and output
    /// path excluded; neither affects the content).
    std::string echo() const;
};

/// Closed-form E(t) for the configured strategy/allocation, or nullopt when
/// none exists (two-directional and grouped-n with n >= 2).
std::optional<double> analytic_time(const ExperimentConfig& config, std::size_t agents);

/// Runs the configured command and returns its table, provenance included.
Table execute(const ExperimentConfig& config);

/// Parses, validates, runs and writes. Returns the process exit code; nothing
/// is written to the output path unless the command succeeds.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coopsearch::cli
