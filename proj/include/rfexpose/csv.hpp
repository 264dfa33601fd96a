// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rfexpose/errors.hpp"
#include "rfexpose/sweep_row.hpp"

namespace rfexpose {

/// Ordered run metadata emitted as `# key: value` comment lines ahead of the
/// CSV header.  Order is preserved so output stays byte-reproducible.
using CsvMetadata = std::vector<std::pair<std::string, std::string>>;

struct CsvDocument {
    CsvMetadata metadata;
    std::vector<SweepRow> rows;
};

/// RFC-4180-style table: comma separator, '.' decimal point, one header line,
/// LF line endings.  Values use shortest round-trip formatting so rewriting a
/// parsed file reproduces it byte for byte.
inline void emit_csv(const std::vector<SweepRow>& rows, const CsvMetadata& metadata,
                     std::ostream& out) {
    for (const auto& [key, value] : metadata) {
        if (key.find_first_of(",\n") != std::string::npos ||
            value.find('\n') != std::string::npos)
            throw ValidationError("csv metadata must not contain commas in keys or newlines");
        out << "# " << key << ": " << value << "\n";
    }
    const auto& columns = sweep_columns();
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i].name;
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            out << (i ? "," : "") << columns[i].write(row);
        out << "\n";
    }
    if (!out)
        throw ValidationError("csv write failed");
}

inline void emit_csv(const std::vector<SweepRow>& rows, const CsvMetadata& metadata,
                     const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot open \"" + path + "\" for writing");
    emit_csv(rows, metadata, out);
    out.close();
    if (!out)
        throw ValidationError("cannot write \"" + path + "\"");
}

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace detail

/// Inverse of emit_csv; validates the header against the column registry.
inline CsvDocument parse_csv(std::istream& in) {
    CsvDocument doc;
    const auto& columns = sweep_columns();
    std::string line;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            if (header_seen)
                throw ValidationError("line " + std::to_string(line_no) +
                                      ": comment after header");
            std::string_view body = std::string_view(line).substr(1);
            if (!body.empty() && body.front() == ' ')
                body.remove_prefix(1);
            std::size_t colon = body.find(": ");
            if (colon == std::string_view::npos)
                throw ValidationError("line " + std::to_string(line_no) +
                                      ": metadata comment without \"key: value\"");
            doc.metadata.emplace_back(std::string(body.substr(0, colon)),
                                      std::string(body.substr(colon + 2)));
            continue;
        }
        auto fields = detail::split_fields(line);
        if (!header_seen) {
            if (fields.size() != columns.size())
                throw ValidationError("header has " + std::to_string(fields.size()) +
                                      " columns, expected " + std::to_string(columns.size()));
            for (std::size_t i = 0; i < columns.size(); ++i)
                if (fields[i] != columns[i].name)
                    throw ValidationError("header column " + std::to_string(i + 1) +
                                          " is \"" + std::string(fields[i]) +
                                          "\", expected \"" + columns[i].name + "\"");
            header_seen = true;
            continue;
        }
        if (fields.size() != columns.size())
            throw ValidationError("line " + std::to_string(line_no) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(columns.size()));
        SweepRow row;
        for (std::size_t i = 0; i < columns.size(); ++i) {
            try {
                columns[i].parse(row, fields[i]);
            } catch (const ValidationError& e) {
                throw ValidationError("line " + std::to_string(line_no) + ", column \"" +
                                      columns[i].name + "\": " + e.what());
            }
        }
        doc.rows.push_back(row);
    }
    if (!header_seen)
        throw ValidationError("csv input has no header line");
    return doc;
}

inline CsvDocument parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot open \"" + path + "\" for reading");
    return parse_csv(in);
}

} // namespace rfexpose
