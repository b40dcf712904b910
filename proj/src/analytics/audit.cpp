#include "catastroagri/analytics/audit.hpp"

#include "catastroagri/error.hpp"

namespace catastroagri::analytics {

std::string_view to_string(AuditStatus s) noexcept {
    switch (s) {
        case AuditStatus::Matched: return "matched";
        case AuditStatus::Unmatched: return "unmatched";
        case AuditStatus::Indeterminate: return "indeterminate";
    }
    return "";
}

std::vector<std::size_t> AuditReport::unmatched_indices() const {
    std::vector<std::size_t> out;
    for (const auto& row : rows) {
        if (row.status == AuditStatus::Unmatched) out.push_back(row.record_index);
    }
    return out;
}

std::vector<std::size_t> AuditReport::indeterminate_indices() const {
    std::vector<std::size_t> out;
    for (const auto& row : rows) {
        if (row.status == AuditStatus::Indeterminate) out.push_back(row.record_index);
    }
    return out;
}

AuditReport rate_audit(const std::vector<model::InsuranceRecord>& records,
                       const std::vector<Decimal>& candidate_rates) {
    if (candidate_rates.empty()) throw Error(ErrorCode::BadRequest, "at least one candidate rate is required");
    for (Decimal rate : candidate_rates) {
        if (rate <= Decimal{}) throw Error(ErrorCode::InvalidRate, "rate must be > 0, got " + rate.to_string());
    }

    AuditReport report;
    report.record_count = records.size();
    for (Decimal rate : candidate_rates) report.per_rate.push_back({rate, 0, 0.0});

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        AuditRow row{i, AuditStatus::Unmatched, {}};
        for (std::size_t k = 0; k < candidate_rates.size(); ++k) {
            const auto due = Decimal::exact_product(r.insured_area_has, candidate_rates[k]);
            if (due && *due == r.indemnity_amount_soles) row.matching_rates.push_back(candidate_rates[k]);
        }
        if (r.insured_area_has == Decimal{} && r.indemnity_amount_soles == Decimal{}) {
            row.status = AuditStatus::Indeterminate;
            ++report.indeterminate;
        } else if (!row.matching_rates.empty()) {
            row.status = AuditStatus::Matched;
            for (std::size_t k = 0; k < candidate_rates.size(); ++k) {
                for (Decimal m : row.matching_rates) {
                    if (m == candidate_rates[k]) {
                        ++report.per_rate[k].matched;
                        break;
                    }
                }
            }
        }
        report.rows.push_back(std::move(row));
    }
    for (auto& tally : report.per_rate) {
        tally.fraction = records.empty() ? 0.0
                                         : static_cast<double>(tally.matched) / static_cast<double>(records.size());
    }
    return report;
}

std::vector<Decimal> parse_rates(std::string_view list) {
    std::vector<Decimal> rates;
    std::size_t start = 0;
    while (true) {
        const auto comma = list.find(',', start);
        const auto item = list.substr(start, comma == std::string_view::npos ? list.npos : comma - start);
        const auto rate = Decimal::parse(item);
        if (!rate) throw Error(ErrorCode::InvalidRate, "rate '" + std::string(item) + "' is not a decimal");
        if (*rate <= Decimal{}) throw Error(ErrorCode::InvalidRate, "rate must be > 0, got " + rate->to_string());
        rates.push_back(*rate);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return rates;
}

}  // namespace catastroagri::analytics
