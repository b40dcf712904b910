#pragma once

#include "catastroagri/ingest/csv.hpp"
#include "catastroagri/model/record.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace catastroagri::ingest {

enum class CanonicalHeader {
    Year,
    Province,
    District,
    SectorEst,
    NomCrop,
    AreaSemHas,
    AreaAsegHas,
    AmountIndSoles,
    NumProdBenif,
};

inline constexpr std::array<CanonicalHeader, 9> kCanonicalHeaders = {
    CanonicalHeader::Year,       CanonicalHeader::Province,    CanonicalHeader::District,
    CanonicalHeader::SectorEst,  CanonicalHeader::NomCrop,     CanonicalHeader::AreaSemHas,
    CanonicalHeader::AreaAsegHas, CanonicalHeader::AmountIndSoles, CanonicalHeader::NumProdBenif,
};

/// "YEAR", "PROVINCE", ..., "NUM_PROD_BENIF".
std::string_view canonical_name(CanonicalHeader header) noexcept;

/// Upper-cases ASCII letters and drops ASCII spaces and punctuation, so
/// "AREA ASEG(Has)" and "area_aseg_has" compare equal. Non-ASCII bytes are
/// kept untouched.
std::string normalize_header(std::string_view header);

/// Canonical header → accepted spellings. Matching is on normalized forms.
class HeaderMapping {
public:
    /// The register's own headers plus English and Spanish long forms.
    static HeaderMapping standard();

    /// Adds an alias; throws Error(BadRequest) if its normalized form is
    /// already claimed by a different canonical header.
    void add_alias(CanonicalHeader header, std::string_view alias);

    std::optional<CanonicalHeader> match(std::string_view header) const;
    const std::set<std::string>& aliases(CanonicalHeader header) const;

    /// Every canonical header has an alias and no normalized alias is shared.
    bool is_consistent() const;

private:
    std::map<CanonicalHeader, std::set<std::string>> aliases_;
    std::map<std::string, CanonicalHeader> by_normalized_;
};

struct RowError {
    std::size_t row = 0;  // 1-based data row, header excluded
    std::string message;

    friend bool operator==(const RowError&, const RowError&) = default;
};

using DatasetId = std::uint64_t;

struct Dataset {
    DatasetId id = 0;  // 0 until a store assigns one
    std::vector<model::InsuranceRecord> records;
    std::string source_name;
    std::chrono::system_clock::time_point ingested_at;
    std::vector<RowError> row_errors;
    std::vector<std::string> columns;  // header cells as they appeared
    std::size_t data_rows = 0;
};

/// Parses a register file. Rows that fail to parse or validate are skipped
/// and reported in row_errors; all other rows are kept in input order.
///
/// Throws Error(EncodingError) on invalid UTF-8, Error(UnsupportedFormat)
/// when a canonical header is missing or claimed twice, and
/// Error(EmptyInput) when there are no data rows.
Dataset parse_csv(std::string_view bytes, const HeaderMapping& mapping = HeaderMapping::standard(),
                  std::string source_name = {});

struct FileFormat {
    enum class Kind { Csv, Unsupported };
    Kind kind = Kind::Unsupported;
    std::string extension;  // lower-cased, without the dot; empty if none

    bool is_csv() const { return kind == Kind::Csv; }
};

FileFormat detect_format(std::string_view file_name);

/// Record table with the canonical headers, in canonical order.
Table records_table(const std::vector<model::InsuranceRecord>& records);

/// CSV bytes for any uniform table (see write_csv).
std::string export_csv(const Table& table);
std::string export_csv(const std::vector<model::InsuranceRecord>& records);

}  // namespace catastroagri::ingest
