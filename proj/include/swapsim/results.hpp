// results.hpp: structured result bundles and plot-ready tables
//
// A run produces one self-describing JSON bundle (summary + tables +
// provenance) and, per table, a flat TSV file. Serialized bundles reparse to
// value-identical bundles; all stored numbers are finite. Every table carries
// column names and one unit string per column ("1" marks a dimensionless
// column, frequencies are in arbitrary angular units).
#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "swapsim/swap.hpp"
#include "swapsim/version.hpp"

namespace swapsim {

struct NamedTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::string> units;  // one entry per column
    std::vector<std::vector<double>> rows;

    bool operator==(const NamedTable&) const = default;

    void validate() const {
        if (columns.empty() || units.size() != columns.size())
            throw std::invalid_argument("NamedTable: need one unit per column");
        for (const auto& row : rows)
            if (row.size() != columns.size())
                throw std::invalid_argument("NamedTable: row width differs from column count");
    }
};

struct Provenance {
    std::string tool_version;
    std::string config_hash;  // 16 hex digits
    std::uint64_t seed = 0;

    bool operator==(const Provenance&) const = default;
};

struct ResultSummary {
    std::string command;
    std::string path;  // "ideal" | "physical"
    bool post_selected = false;
    double success_probability = 0.0;
    double chi_scale = 1.0;
    double sum_invariant = 0.0;
    double entanglement_entropy = 0.0;
    std::vector<double> schmidt_coefficients;

    bool operator==(const ResultSummary&) const = default;
};

struct ResultBundle {
    ResultSummary summary;
    std::vector<NamedTable> tables;
    Provenance provenance;

    bool operator==(const ResultBundle&) const = default;
};

// FNV-1a over the canonical config text; stable across platforms.
inline std::string fnv1a_hex(const std::string& text) {
    std::uint64_t hash = 14695981039346656037ULL;
    for (const unsigned char byte : text) {
        hash ^= byte;
        hash *= 1099511628211ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buffer);
}

inline std::string serialize_results(const ResultBundle& bundle) {
    for (const NamedTable& table : bundle.tables) table.validate();
    nlohmann::ordered_json doc;
    nlohmann::ordered_json summary;
    summary["command"] = bundle.summary.command;
    summary["path"] = bundle.summary.path;
    summary["post_selected"] = bundle.summary.post_selected;
    summary["success_probability"] = bundle.summary.success_probability;
    summary["chi_scale"] = bundle.summary.chi_scale;
    summary["sum_invariant"] = bundle.summary.sum_invariant;
    summary["entanglement_entropy"] = bundle.summary.entanglement_entropy;
    summary["schmidt_coefficients"] = bundle.summary.schmidt_coefficients;
    doc["summary"] = std::move(summary);
    nlohmann::ordered_json tables = nlohmann::ordered_json::array();
    for (const NamedTable& table : bundle.tables) {
        nlohmann::ordered_json t;
        t["name"] = table.name;
        t["columns"] = table.columns;
        t["units"] = table.units;
        t["rows"] = table.rows;
        tables.push_back(std::move(t));
    }
    doc["tables"] = std::move(tables);
    doc["provenance"] = {{"tool_version", bundle.provenance.tool_version},
                         {"config_hash", bundle.provenance.config_hash},
                         {"seed", bundle.provenance.seed}};
    return doc.dump(2) + "\n";
}

inline ResultBundle parse_results(const std::string& text) {
    const auto doc = nlohmann::ordered_json::parse(text);
    ResultBundle bundle;
    const auto& summary = doc.at("summary");
    bundle.summary.command = summary.at("command").get<std::string>();
    bundle.summary.path = summary.at("path").get<std::string>();
    bundle.summary.post_selected = summary.at("post_selected").get<bool>();
    bundle.summary.success_probability = summary.at("success_probability").get<double>();
    bundle.summary.chi_scale = summary.at("chi_scale").get<double>();
    bundle.summary.sum_invariant = summary.at("sum_invariant").get<double>();
    bundle.summary.entanglement_entropy = summary.at("entanglement_entropy").get<double>();
    bundle.summary.schmidt_coefficients =
        summary.at("schmidt_coefficients").get<std::vector<double>>();
    for (const auto& t : doc.at("tables")) {
        NamedTable table;
        table.name = t.at("name").get<std::string>();
        table.columns = t.at("columns").get<std::vector<std::string>>();
        table.units = t.at("units").get<std::vector<std::string>>();
        table.rows = t.at("rows").get<std::vector<std::vector<double>>>();
        bundle.tables.push_back(std::move(table));
    }
    const auto& provenance = doc.at("provenance");
    bundle.provenance.tool_version = provenance.at("tool_version").get<std::string>();
    bundle.provenance.config_hash = provenance.at("config_hash").get<std::string>();
    bundle.provenance.seed = provenance.at("seed").get<std::uint64_t>();
    return bundle;
}

// Lossless, locale-independent decimal rendering for TSV cells.
inline std::string render_double(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return std::string(buffer);
}

// TSV layout: "# table:"/"# units:" comment lines, a header row, data rows.
inline void write_tsv(const NamedTable& table, std::ostream& out) {
    table.validate();
    out << "# table: " << table.name << "\n# units:";
    for (const std::string& unit : table.units) out << "\t" << unit;
    out << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i == 0 ? "" : "\t") << table.columns[i];
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i == 0 ? "" : "\t") << render_double(row[i]);
        out << "\n";
    }
}

}  // namespace swapsim
