#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coopsearch/allocation.hpp"
#include "coopsearch/harness.hpp"

namespace coopsearch {

using Cell = std::variant<std::string, double, std::uint64_t>;

/// Rows plus ordered key/value provenance. Serializes to comma-separated
/// values with `#` header lines, or to a JSON document.
struct Table {
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

enum class TableFormat { dsv, structured };

TableFormat parse_format(const std::string& name);

void write_table(const Table& table, TableFormat format, std::ostream& out);
std::string render_table(const Table& table, TableFormat format);

/// bin_start, mass
Table length_table(const LengthDistribution& lengths);

/// strategy, allocation, m, mean, stderr, ci95, trials, seed, min, max
Table sweep_table(const SweepResult& sweep);
Table comparison_table(const std::vector<ComparisonRow>& rows, std::uint64_t seed);

}  // namespace coopsearch
