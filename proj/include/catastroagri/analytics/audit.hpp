#pragma once

#include "catastroagri/decimal.hpp"
#include "catastroagri/model/record.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace catastroagri::analytics {

enum class AuditStatus {
    Matched,        // indemnity = rate × insured area for at least one candidate
    Unmatched,      // no candidate reproduces the recorded amount
    Indeterminate,  // zero area and zero amount: every rate fits
};

std::string_view to_string(AuditStatus s) noexcept;

struct AuditRow {
    std::size_t record_index = 0;  // 0-based position in the dataset
    AuditStatus status = AuditStatus::Unmatched;
    std::vector<Decimal> matching_rates;
};

struct RateTally {
    Decimal rate;
    std::size_t matched = 0;  // determinate records only
    double fraction = 0.0;    // matched / total records
};

struct AuditReport {
    std::vector<RateTally> per_rate;  // in candidate order
    std::vector<AuditRow> rows;       // one per record
    std::size_t record_count = 0;
    std::size_t indeterminate = 0;

    std::vector<std::size_t> unmatched_indices() const;
    std::vector<std::size_t> indeterminate_indices() const;
};

/// Checks every record against amount = rate × insured area, exactly.
/// Throws Error(BadRequest) for an empty candidate list and
/// Error(InvalidRate) for a non-positive candidate.
AuditReport rate_audit(const std::vector<model::InsuranceRecord>& records,
                       const std::vector<Decimal>& candidate_rates);

/// "400,800" → rates. Throws Error(InvalidRate) for unparsable or
/// non-positive items.
std::vector<Decimal> parse_rates(std::string_view list);

}  // namespace catastroagri::analytics
