#include "cayley/records.hpp"

#include <cmath>
#include <cstdio>

#include "cayley/error.hpp"

namespace cayley {

OutFormat parse_format(const std::string& name) {
    if (name == "csv") return OutFormat::csv;
    if (name == "tsv") return OutFormat::tsv;
    if (name == "json") return OutFormat::json;
    fail(errc::invalid_argument, "unknown format '" + name + "' (csv|tsv|json)");
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out.push_back('\\');
        out.push_back(ch);
    }
    return out;
}

bool json_bare_ok(const std::string& v) {
    // nan/inf are not JSON numbers
    return v.find_first_not_of("0123456789+-.eE") == std::string::npos && !v.empty();
}

} // namespace

std::string render(const Table& table, OutFormat format) {
    std::string out;
    if (format == OutFormat::csv || format == OutFormat::tsv) {
        char sep = format == OutFormat::csv ? ',' : '\t';
        if (!table.headerless) {
            if (format == OutFormat::tsv) out += "# ";
            for (std::size_t i = 0; i < table.columns.size(); ++i) {
                if (i) out += sep;
                out += table.columns[i];
            }
            out += '\n';
        }
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += sep;
                out += row[i];
            }
            out += '\n';
        }
        return out;
    }
    out += "{\"meta\":{\"build\":\"";
    out += kBuildVersion;
    out += "\",\"schema_version\":";
    out += std::to_string(kSchemaVersion);
    out += "},\"records\":[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (r) out += ',';
        out += '{';
        for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
            if (i) out += ',';
            out += '"';
            out += table.columns[i];
            out += "\":";
            const std::string& v = table.rows[r][i];
            if (table.numeric[i]) {
                out += json_bare_ok(v) ? v : std::string("null");
            } else {
                out += '"';
                out += json_escape(v);
                out += '"';
            }
        }
        out += '}';
    }
    out += "]}\n";
    return out;
}

const std::vector<std::string> kSweepColumns = {
    "n", "k", "r", "a", "b", "c", "d", "count_in", "count_total",
    "probability", "reference_mass", "abs_error", "method", "tolerance", "seed"};

Table sweep_table() {
    Table t;
    t.columns = kSweepColumns;
    t.numeric = {true, true, true, true, true, true, true, true,
                 true, true, true, true, false, true, true};
    return t;
}

std::vector<std::string> sweep_fields(const SweepRecord& rec) {
    std::string count_in = rec.method == "fast" ? fmt_double(rec.fast_count)
                                                : to_string(rec.exact_count);
    return {std::to_string(rec.n),
            std::to_string(rec.k),
            std::to_string(rec.r),
            fmt_double(rec.a),
            fmt_double(rec.b),
            fmt_double(rec.c),
            fmt_double(rec.d),
            count_in,
            to_string(rec.total_count),
            fmt_double(rec.probability),
            fmt_double(rec.reference_mass),
            fmt_double(rec.abs_error),
            rec.method,
            fmt_double(rec.tolerance),
            std::to_string(rec.seed)};
}

} // namespace cayley
