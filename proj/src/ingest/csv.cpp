#include "catastroagri/ingest/csv.hpp"

#include "catastroagri/error.hpp"

namespace catastroagri::ingest {

std::vector<CsvRecord> read_csv_records(std::string_view text) {
    std::vector<CsvRecord> records;
    CsvRecord current;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool record_has_content = false;
    std::size_t line = 1;
    current.line = line;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = !record_has_content && current.fields.size() == 1;
        if (!blank) records.push_back(std::move(current));
        current = CsvRecord{};
        record_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                // A quote opens a quoted section only at the start of a field;
                // elsewhere it is taken literally.
                if (field.empty() && !field_was_quoted) {
                    in_quotes = true;
                    field_was_quoted = true;
                    record_has_content = true;
                } else {
                    field += c;
                }
                break;
            case ',':
                record_has_content = true;
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;
                field += c;
                record_has_content = true;
                break;
            case '\n':
                end_record();
                ++line;
                current.line = line;
                break;
            default:
                field += c;
                record_has_content = true;
        }
    }
    if (in_quotes) {
        throw Error(ErrorCode::UnsupportedFormat,
                    "unterminated quoted field starting on line " + std::to_string(current.line));
    }
    if (record_has_content || !field.empty()) end_record();
    return records;
}

Table read_table(std::string_view text) {
    auto records = read_csv_records(strip_bom(text));
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "no header row");
    Table table;
    table.columns = std::move(records.front().fields);
    table.rows.reserve(records.size() - 1);
    for (std::size_t i = 1; i < records.size(); ++i) table.rows.push_back(std::move(records[i].fields));
    return table;
}

std::string escape_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string write_csv(const Table& table) {
    std::string out;
    auto write_row = [&](const std::vector<std::string>& cells) {
        if (cells.size() != table.columns.size()) {
            throw Error(ErrorCode::BadRequest, "row width does not match the column set");
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i != 0) out += ',';
            out += escape_field(cells[i]);
        }
        out += '\n';
    };
    write_row(table.columns);
    for (const auto& row : table.rows) write_row(row);
    return out;
}

bool is_valid_utf8(std::string_view bytes) noexcept {
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t n = bytes.size();
    std::size_t i = 0;
    while (i < n) {
        const unsigned char c = p[i];
        if (c < 0x80) {
            ++i;
            continue;
        }
        std::size_t len = 0;
        char32_t cp = 0;
        if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((p[i + k] & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (p[i + k] & 0x3F);
        }
        const char32_t min_for_len[] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < min_for_len[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
        i += len;
    }
    return true;
}

std::string_view strip_bom(std::string_view bytes) noexcept {
    if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);
    return bytes;
}

}  // namespace catastroagri::ingest
