#pragma once

#include <string>
#include <vector>

#include "cayley/stats.hpp"

namespace cayley {

constexpr int kSchemaVersion = 1;
constexpr const char* kBuildVersion = "cayley 1.0.0";

enum class OutFormat { csv, tsv, json };

OutFormat parse_format(const std::string& name); // "csv" | "tsv" | "json"

/// %.17g rendering: lossless double round-trip, byte-stable across runs.
std::string fmt_double(double v);

/// Column-typed row table rendered to any of the output formats. CSV gets a
/// header line unless headerless is set; TSV comments the header with '#'
/// (gnuplot-ready); JSON wraps rows in {"meta": ..., "records": [...]}.
struct Table {
    std::vector<std::string> columns;
    std::vector<bool> numeric; // JSON: emit bare (null when "nan"/"inf")
    std::vector<std::vector<std::string>> rows;
    bool headerless = false;

    void add_row(std::vector<std::string> fields) { rows.push_back(std::move(fields)); }
};

std::string render(const Table& table, OutFormat format);

/// The pinned prob/sweep row schema.
extern const std::vector<std::string> kSweepColumns;

std::vector<std::string> sweep_fields(const SweepRecord& rec);

Table sweep_table();

} // namespace cayley
