#pragma once

#include "catastroagri/decimal.hpp"
#include "catastroagri/ingest/csv.hpp"
#include "catastroagri/ingest/dataset.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace catastroagri::analytics {

enum class Dimension { Campaign, Province, District, Sector, Crop };

std::string_view to_string(Dimension d) noexcept;
/// Accepts "campaign"/"year", "province", "district", "sector", "crop"
/// (any case). Throws Error(BadDimension).
Dimension parse_dimension(std::string_view name);
/// Comma-separated list; throws Error(BadDimension) or
/// Error(DuplicateDimension).
std::vector<Dimension> parse_dimensions(std::string_view list);

const std::string& field_of(const model::InsuranceRecord& record, Dimension d);

/// Group/filter key: trimmed, ASCII letters upper-cased, accents kept.
std::string match_key(std::string_view value);

enum class Metric { Sown, Insured, Indemnity, Producers };

std::string_view to_string(Metric m) noexcept;
/// Throws Error(BadMetric).
Metric parse_metric(std::string_view name);

struct Filter {
    Dimension dimension;
    std::set<std::string> accepted_values;  // stored as match keys

    /// Throws Error(BadRequest) when `values` is empty.
    static Filter make(Dimension dimension, const std::vector<std::string>& values);
    bool accepts(const model::InsuranceRecord& record) const;
};

/// Parses "dim:value" or "dim=value" items. Items naming the same dimension
/// are merged into one filter accepting any of the values.
std::vector<Filter> parse_filters(const std::vector<std::string>& items);

struct SummaryRow {
    std::vector<std::pair<Dimension, std::string>> group_key;
    Decimal total_sown_has;
    Decimal total_insured_has;
    Decimal total_indemnity_soles;
    std::int64_t total_producers = 0;
    std::int64_t record_count = 0;

    Decimal metric(Metric m) const;
    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct Summary {
    std::vector<Dimension> by;
    std::vector<SummaryRow> rows;
    SummaryRow grand_total;  // empty group_key; record_count 0 when empty

    bool empty() const { return rows.empty(); }
};

/// Groups the records that pass every filter. Rows are ordered by their
/// match keys; each row shows the lexicographically smallest spelling seen
/// for its group, so the output does not depend on record order.
///
/// Throws Error(BadRequest) for an empty `by` and Error(DuplicateDimension)
/// when `by` repeats a dimension. An empty result is not an error.
Summary summarize(const std::vector<model::InsuranceRecord>& records,
                  const std::vector<Dimension>& by, const std::vector<Filter>& filters = {});

/// The k largest rows by `metric`, ties by group key ascending.
/// Throws Error(BadRequest) for k < 1.
std::vector<SummaryRow> top_k(std::vector<SummaryRow> rows, Metric metric, std::size_t k);

/// Tabular form for export; `with_total` appends a TOTAL row.
ingest::Table summary_table(const Summary& summary, bool with_total = false);

/// Pearson correlation between two metric columns. Exactly ±1 when the
/// columns are exactly linearly related. Throws Error(DegenerateInput) for
/// fewer than two rows or a constant column.
double correlation(const std::vector<SummaryRow>& rows, Metric x, Metric y);

}  // namespace catastroagri::analytics
