#pragma once

#include "catastroagri/decimal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace catastroagri::model {

/// One row of the insured-producers register.
struct InsuranceRecord {
    std::string campaign_year;  // opaque, e.g. "2010-2011"
    std::string province;
    std::string district;
    std::string statistical_sector;
    std::string crop_name;
    Decimal sown_area_has;
    Decimal insured_area_has;
    Decimal indemnity_amount_soles;
    std::int64_t producers_benefited = 0;

    friend bool operator==(const InsuranceRecord&, const InsuranceRecord&) = default;
};

struct Violation {
    std::string field;
    std::string rule;

    std::string message() const { return field + " " + rule; }
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<Violation> warnings;

    bool ok() const { return violations.empty(); }
};

/// Checks the record invariants. Never throws. Insured area above sown area
/// is reported as a warning only.
ValidationReport validate_record(const InsuranceRecord& record);

/// Ordering key of a campaign label: its leading four-digit year, if any.
std::optional<int> campaign_start_year(std::string_view campaign_year);

/// Strict weak ordering on campaign labels: by start year (labels without
/// one sort last), then by the label text.
bool campaign_less(std::string_view a, std::string_view b);

std::string_view trim(std::string_view text);

}  // namespace catastroagri::model
