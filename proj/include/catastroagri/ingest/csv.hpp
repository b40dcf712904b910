#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace catastroagri::ingest {

/// A rectangular table of text cells with a header row.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

/// A raw CSV record together with the physical line it started on.
struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

/// Splits RFC-4180 text into records. Accepts LF and CRLF line endings,
/// quoted fields with embedded delimiters, doubled quotes and line breaks.
/// Blank lines are skipped. Throws Error(UnsupportedFormat) on an
/// unterminated quoted field.
std::vector<CsvRecord> read_csv_records(std::string_view text);

/// First record is the header. Throws Error(EmptyInput) on empty text.
/// Rows are kept as-is; callers decide how to treat ragged rows.
Table read_table(std::string_view text);

/// Quotes a field when it contains a comma, a quote, CR or LF; embedded
/// quotes are doubled.
std::string escape_field(std::string_view field);

/// Comma-delimited, LF-terminated rendering with a header row. Every row
/// must have columns.size() cells (Error(BadRequest) otherwise).
std::string write_csv(const Table& table);

/// Returns false when `bytes` is not well-formed UTF-8 (overlongs,
/// surrogates and code points above U+10FFFF are rejected).
bool is_valid_utf8(std::string_view bytes) noexcept;

/// Removes a leading UTF-8 byte-order mark, if present.
std::string_view strip_bom(std::string_view bytes) noexcept;

}  // namespace catastroagri::ingest
