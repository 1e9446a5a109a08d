#include "app.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "coopsearch/allocation.hpp"
#include "coopsearch/analytics.hpp"

namespace coopsearch::cli {

std::string to_string(Command command) {
    switch (command) {
        case Command::pl_hist: return "pl-hist";
        case Command::expected: return "expected";
        case Command::simulate: return "simulate";
        case Command::sweep: return "sweep";
        case Command::compare: return "compare";
    }
    return "unknown";
}

namespace {

const std::vector<std::size_t> kHistogramAgents = {2, 5, 10, 20, 30};
const char* const kDefaultTargets = "one-directional:23,two-directional:14,grouped-3:12,grouped-4:11,proportional:10";

struct RawOptions {
    double region_length = 1000.0;
    std::string agents;
    std::string agents_range;
    std::string strategy = "one-directional";
    std::string allocation;
    std::string speeds;
    std::string targets;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    std::string output;
    std::string format = "dsv";
    bool with_analytic = false;
};

std::size_t parse_count(const std::string& token) {
    std::size_t value = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw std::invalid_argument("not an agent count: '" + token + "'");
    }
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::vector<std::size_t> parse_agents(const RawOptions& raw) {
    if (!raw.agents.empty() && !raw.agents_range.empty()) {
        throw std::invalid_argument("--agents and --agents-range are mutually exclusive");
    }
    std::vector<std::size_t> out;
    if (!raw.agents_range.empty()) {
        const auto parts = split(raw.agents_range, ':');
        if (parts.size() != 2) throw std::invalid_argument("--agents-range expects first:last");
        const std::size_t lo = parse_count(parts[0]);
        const std::size_t hi = parse_count(parts[1]);
        if (lo > hi) throw std::invalid_argument("--agents-range is empty");
        for (std::size_t m = lo; m <= hi; ++m) out.push_back(m);
    } else {
        for (const auto& token : split(raw.agents, ',')) out.push_back(parse_count(token));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] == 0) throw std::invalid_argument("agent counts must be at least 1");
        if (i > 0 && out[i] <= out[i - 1]) throw std::invalid_argument("agent counts must be strictly increasing");
    }
    return out;
}

std::string join_agents(const std::vector<std::size_t>& agents) {
    std::string out;
    for (std::size_t i = 0; i < agents.size(); ++i) out += (i ? "," : "") + std::to_string(agents[i]);
    return out;
}

std::string join_targets(const std::vector<ComparisonTarget>& targets) {
    std::string out;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        out += (i ? "," : "") + targets[i].label() + ":" + std::to_string(targets[i].agents);
    }
    return out;
}

ExperimentConfig build_config(Command command, const RawOptions& raw) {
    ExperimentConfig c;
    c.command = command;
    RegionSpec region(raw.region_length);
    c.region_length = region.length();
    c.trials = raw.trials;
    if (c.trials == 0) throw std::invalid_argument("--trials must be at least 1");
    c.seed = raw.seed;
    c.workers = raw.workers;
    if (!raw.output.empty()) c.output = raw.output;
    c.format = parse_format(raw.format);
    c.with_analytic = raw.with_analytic;
    if (!raw.speeds.empty()) c.speeds = parse_speed_distribution(raw.speeds);
    c.strategy = parse_strategy(raw.strategy);
    const bool proportional = c.strategy.kind() == Strategy::Kind::proportional;
    c.allocation = raw.allocation.empty()
                       ? (proportional ? AllocationMethod::proportional : AllocationMethod::random)
                       : parse_allocation(raw.allocation);

    switch (command) {
        case Command::pl_hist:
            c.agents = raw.agents.empty() && raw.agents_range.empty() ? kHistogramAgents : parse_agents(raw);
            if (c.allocation != AllocationMethod::random) throw std::invalid_argument("pl-hist requires random allocation");
            for (std::size_t m : c.agents) {
                if (m < 2) throw std::invalid_argument("pl-hist requires at least 2 agents");
            }
            break;
        case Command::compare:
            for (const auto& token : split(raw.targets.empty() ? kDefaultTargets : raw.targets, ',')) {
                c.targets.push_back(parse_target(token));
            }
            for (const auto& t : c.targets) {
                validate(TrialPlan{region, t.agents, t.strategy, t.allocation, c.speeds, c.trials, c.seed});
            }
            break;
        case Command::expected:
        case Command::simulate:
        case Command::sweep: {
            if (raw.agents.empty() && raw.agents_range.empty()) {
                if (command == Command::simulate) throw std::invalid_argument("simulate requires --agents");
                RawOptions range;
                range.agents_range = "1:32";
                c.agents = parse_agents(range);
            } else {
                c.agents = parse_agents(raw);
            }
            if (command == Command::simulate && c.agents.size() != 1) {
                throw std::invalid_argument("simulate takes a single agent count; use sweep for several");
            }
            for (std::size_t m : c.agents) {
                validate(TrialPlan{region, m, c.strategy, c.allocation, c.speeds, c.trials, c.seed});
            }
            const bool needs_analytic = command == Command::expected || c.with_analytic;
            if (needs_analytic && !analytic_time(c, c.agents.front())) {
                throw std::invalid_argument("strategy " + c.strategy.name() +
                                            " has no closed-form expected time; use simulate or sweep without "
                                            "--with-analytic");
            }
            break;
        }
    }
    return c;
}

std::vector<Cell> append(std::vector<Cell> row, Cell extra) {
    row.push_back(std::move(extra));
    return row;
}

}  // namespace

std::string ExperimentConfig::echo() const {
    std::string s = "coopsearch " + to_string(command) + " --region-length " + format_real(region_length);
    switch (command) {
        case Command::pl_hist: s += " --agents " + join_agents(agents); break;
        case Command::compare:
            s += " --targets " + join_targets(targets) + " --speeds " + speeds.to_string();
            break;
        case Command::expected:
        case Command::simulate:
        case Command::sweep:
            s += " --agents " + join_agents(agents) + " --strategy " + strategy.name() + " --allocation " +
                 coopsearch::to_string(allocation) + " --speeds " + speeds.to_string();
            if (with_analytic && command == Command::sweep) s += " --with-analytic";
            break;
    }
    if (command != Command::expected) s += " --trials " + std::to_string(trials) + " --seed " + std::to_string(seed);
    s += std::string(" --format ") + (format == TableFormat::dsv ? "dsv" : "structured");
    return s;
}

std::optional<double> analytic_time(const ExperimentConfig& config, std::size_t agents) {
    const auto& s = config.strategy;
    const bool per_arc = s.kind() == Strategy::Kind::one_directional ||
                         (s.kind() == Strategy::Kind::grouped && s.group_size() == 1);
    const double L = config.region_length;
    if (s.kind() == Strategy::Kind::proportional) {
        return expected_time_proportional_resampled(L, agents, config.speeds);
    }
    if (!per_arc) return std::nullopt;
    switch (config.allocation) {
        case AllocationMethod::equal:
            return expected_time_independent(config.speeds, length_pmf_equal(L, agents), agents, L);
        case AllocationMethod::semi_equal:
            return expected_time_independent(config.speeds, length_pmf_semi_equal(L, agents), agents, L);
        case AllocationMethod::random: return expected_time_random(L, agents, config.speeds);
        case AllocationMethod::proportional: break;
    }
    return std::nullopt;
}

Table execute(const ExperimentConfig& config) {
    const RegionSpec region(config.region_length);
    Table table;
    switch (config.command) {
        case Command::pl_hist: {
            table.columns = {"m", "bin_start", "estimated", "oracle"};
            for (std::size_t m : config.agents) {
                const auto est = estimate_length_pmf(config.region_length, m, config.trials, config.seed, config.workers);
                const auto oracle = spacing_pmf_oracle(config.region_length, m);
                for (std::size_t k = 0; k < est.entries().size(); ++k) {
                    table.rows.push_back({static_cast<std::uint64_t>(m), est.entries()[k].length, est.entries()[k].mass,
                                          oracle.entries()[k].mass});
                }
            }
            break;
        }
        case Command::expected: {
            table.columns = {"strategy", "allocation", "m", "expected_time"};
            for (std::size_t m : config.agents) {
                table.rows.push_back({config.strategy.name(), coopsearch::to_string(config.allocation),
                                      static_cast<std::uint64_t>(m), *analytic_time(config, m)});
            }
            break;
        }
        case Command::simulate:
        case Command::sweep: {
            TrialPlan plan{region, config.agents.front(), config.strategy, config.allocation, config.speeds,
                           config.trials, config.seed};
            const auto sweep = sweep_m(plan, config.agents, config.workers);
            table = sweep_table(sweep);
            if (config.with_analytic) {
                table.columns.push_back("analytic");
                for (std::size_t i = 0; i < table.rows.size(); ++i) {
                    table.rows[i] = append(std::move(table.rows[i]), *analytic_time(config, sweep.points[i].agents));
                }
            }
            break;
        }
        case Command::compare: {
            table = comparison_table(
                compare_strategies(region, config.speeds, config.targets, config.trials, config.seed, config.workers),
                config.seed);
            break;
        }
    }
    table.provenance = {{"generator", std::string("coopsearch ") + kVersion},
                        {"config", config.echo()},
                        {"seed", std::to_string(config.seed)}};
    return table;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte-Carlo and closed-form expected search times for cooperative exhaustive search"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RawOptions raw;
    auto add_common = [&raw](CLI::App* sub) {
        sub->add_option("--region-length", raw.region_length, "Circumference L of the search region")
            ->capture_default_str();
        sub->add_option("--agents", raw.agents, "Agent count(s), comma-separated and increasing");
        sub->add_option("--agents-range", raw.agents_range, "Inclusive agent-count range first:last");
        sub->add_option("--strategy", raw.strategy, "one-directional | two-directional | grouped-<n> | proportional")
            ->capture_default_str();
        sub->add_option("--allocation", raw.allocation, "equal | semi-equal | random | proportional");
        sub->add_option("--speeds", raw.speeds, "Speed pmf as speed:mass,... (default 0.5:0.3,1:0.3,1.375:0.4)");
        sub->add_option("--trials", raw.trials, "Monte-Carlo trials per point")->capture_default_str();
        sub->add_option("--seed", raw.seed, "Base seed")->capture_default_str();
        sub->add_option("--workers", raw.workers, "Worker threads (0 = available parallelism)")->capture_default_str();
        sub->add_option("--output", raw.output, "Output file (default stdout)");
        sub->add_option("--format", raw.format, "dsv | structured")->capture_default_str();
    };

    struct Sub {
        Command command;
        CLI::App* app;
    };
    std::vector<Sub> subs = {
        {Command::pl_hist, app.add_subcommand("pl-hist", "Estimated vs analytic subregion-length histogram")},
        {Command::expected, app.add_subcommand("expected", "Closed-form expected search times")},
        {Command::simulate, app.add_subcommand("simulate", "Monte-Carlo estimate for one agent count")},
        {Command::sweep, app.add_subcommand("sweep", "Monte-Carlo estimates over a range of agent counts")},
        {Command::compare, app.add_subcommand("compare", "Side-by-side strategy comparison")},
    };
    for (auto& s : subs) add_common(s.app);
    subs[3].app->add_flag("--with-analytic", raw.with_analytic, "Append the closed-form column");
    subs[4].app->add_option("--targets", raw.targets, "Comma-separated name:m targets")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    Command command = Command::simulate;
    for (const auto& s : subs) {
        if (s.app->parsed()) command = s.command;
    }

    try {
        const ExperimentConfig config = build_config(command, raw);
        const std::string text = render_table(execute(config), config.format);
        if (config.output) {
            std::ofstream file(*config.output, std::ios::binary | std::ios::trunc);
            if (!file) throw std::runtime_error("cannot open output file " + *config.output);
            file << text;
            if (!file.flush()) throw std::runtime_error("failed writing " + *config.output);
        } else {
            out << text;
            out.flush();
        }
    } catch (const std::exception& e) {
        err << "coopsearch " << to_string(command) << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace coopsearch::cli
