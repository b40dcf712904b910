#pragma once

#include "catastroagri/decimal.hpp"

#include <map>
#include <string>
#include <string_view>

namespace catastroagri::analytics {

/// Statutory payment per insured hectare after a catastrophic adjustment.
inline const Decimal kDefaultRateSolesPerHa = Decimal::from_integer(800);

/// Indemnity owed for a catastrophic loss: rate × insured area. The product
/// is exact whenever it fits six fractional digits and is otherwise rounded
/// half away from zero.
///
/// Throws Error(InvalidRate) for rate ≤ 0 and Error(DomainError) for a
/// negative area.
Decimal indemnity_due(Decimal insured_area_has, Decimal rate_soles_per_ha);

/// Per-campaign indemnity rates with a fallback default.
class RateSchedule {
public:
    RateSchedule() = default;
    explicit RateSchedule(Decimal default_rate);

    /// Throws Error(InvalidRate) for rate ≤ 0.
    void set_campaign_rate(std::string campaign_year, Decimal rate);

    Decimal default_rate() const { return default_rate_; }
    Decimal rate_for(std::string_view campaign_year) const;
    const std::map<std::string, Decimal, std::less<>>& campaign_rates() const { return campaign_rates_; }

    /// Reads {"default_rate_soles_per_ha": "800", "campaign_rates": {"2010-2011": "400"}}.
    /// Rates may be JSON strings or numbers. Throws Error(BadRequest) on
    /// malformed documents and Error(InvalidRate) on non-positive rates.
    static RateSchedule from_json(std::string_view text);

private:
    Decimal default_rate_ = kDefaultRateSolesPerHa;
    std::map<std::string, Decimal, std::less<>> campaign_rates_;
};

}  // namespace catastroagri::analytics
