#include "coopsearch/table.hpp"

#include <json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coopsearch {

TableFormat parse_format(const std::string& name) {
    if (name == "dsv") return TableFormat::dsv;
    if (name == "structured") return TableFormat::structured;
    throw std::invalid_argument("unknown format '" + name + "' (expected dsv or structured)");
}

namespace {

std::string cell_text(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
    return std::to_string(std::get<std::uint64_t>(cell));
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

void write_dsv(const Table& table, std::ostream& out) {
    for (const auto& [key, value] : table.provenance) out << "# " << key << ": " << value << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << '\n';
    }
}

void write_structured(const Table& table, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["provenance"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.provenance) doc["provenance"][key] = value;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json record = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) record[table.columns[i]] = cell_json(row[i]);
        doc["rows"].push_back(std::move(record));
    }
    out << doc.dump(2) << '\n';
}

std::vector<Cell> stats_row(const std::string& strategy, const std::string& allocation, std::size_t m,
                            const SummaryStats& s, std::uint64_t seed) {
    return {strategy, allocation, static_cast<std::uint64_t>(m), s.mean, s.std_error, s.ci95_half_width,
            s.trials, seed, s.min, s.max};
}

const std::vector<std::string> kStatsColumns = {"strategy", "allocation", "m", "mean", "stderr",
                                                "ci95", "trials", "seed", "min", "max"};

}  // namespace

void write_table(const Table& table, TableFormat format, std::ostream& out) {
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) throw std::logic_error("row width does not match the header");
    }
    if (format == TableFormat::dsv) {
        write_dsv(table, out);
    } else {
        write_structured(table, out);
    }
}

std::string render_table(const Table& table, TableFormat format) {
    std::ostringstream out;
    write_table(table, format, out);
    return out.str();
}

Table length_table(const LengthDistribution& lengths) {
    Table t;
    t.columns = {"bin_start", "mass"};
    for (const auto& e : lengths.entries()) t.rows.push_back({e.length, e.mass});
    return t;
}

Table sweep_table(const SweepResult& sweep) {
    Table t;
    t.columns = kStatsColumns;
    for (const auto& p : sweep.points) {
        t.rows.push_back(stats_row(sweep.strategy.name(), to_string(sweep.allocation), p.agents, p.stats,
                                   sweep.base_seed));
    }
    return t;
}

Table comparison_table(const std::vector<ComparisonRow>& rows, std::uint64_t seed) {
    Table t;
    t.columns = kStatsColumns;
    for (const auto& r : rows) {
        t.rows.push_back(stats_row(r.target.strategy.name(), to_string(r.target.allocation), r.target.agents,
                                   r.stats, seed));
    }
    return t;
}

}  // namespace coopsearch
