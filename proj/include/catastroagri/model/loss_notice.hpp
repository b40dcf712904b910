#pragma once

#include "catastroagri/decimal.hpp"
#include "catastroagri/model/risk.hpp"

#include <chrono>
#include <string>
#include <string_view>
#include <variant>

namespace catastroagri::model {

namespace status {
struct Reported {
    friend bool operator==(Reported, Reported) = default;
};
struct FieldEvaluated {
    friend bool operator==(FieldEvaluated, FieldEvaluated) = default;
};
struct Adjusted {
    bool catastrophic_loss = false;
    friend bool operator==(Adjusted, Adjusted) = default;
};
struct Indemnified {
    Decimal amount_soles;
    friend bool operator==(Indemnified, Indemnified) = default;
};
}  // namespace status

using NoticeStatus =
    std::variant<status::Reported, status::FieldEvaluated, status::Adjusted, status::Indemnified>;

/// Position in the chain Reported < FieldEvaluated < Adjusted < Indemnified.
int stage_of(const NoticeStatus& status) noexcept;
std::string_view stage_name(const NoticeStatus& status) noexcept;

namespace event {
struct Evaluate {};
struct Adjust {
    bool catastrophic_loss = false;
};
struct Indemnify {
    Decimal rate_soles_per_ha;
    Decimal insured_area_has;
};
}  // namespace event

using NoticeEvent = std::variant<event::Evaluate, event::Adjust, event::Indemnify>;

/// A notice of loss filed for one statistical sector.
class LossNotice {
public:
    /// Throws Error(InvalidNotice) when the sector is blank, an area is
    /// negative, or hectares lost exceed hectares affected.
    LossNotice(std::string statistical_sector, Decimal hectares_affected, Decimal hectares_lost,
               RiskPhenomenon phenomenon, std::string vegetative_period,
               std::chrono::year_month_day occurrence_date,
               NoticeStatus status = status::Reported{});

    const std::string& statistical_sector() const { return statistical_sector_; }
    Decimal hectares_affected() const { return hectares_affected_; }
    Decimal hectares_lost() const { return hectares_lost_; }
    RiskPhenomenon phenomenon() const { return phenomenon_; }
    const std::string& vegetative_period() const { return vegetative_period_; }
    std::chrono::year_month_day occurrence_date() const { return occurrence_date_; }
    const NoticeStatus& status() const { return status_; }

    friend bool operator==(const LossNotice&, const LossNotice&) = default;

private:
    std::string statistical_sector_;
    Decimal hectares_affected_;
    Decimal hectares_lost_;
    RiskPhenomenon phenomenon_;
    std::string vegetative_period_;
    std::chrono::year_month_day occurrence_date_;
    NoticeStatus status_;
};

/// Applies one workflow event and returns the updated notice. Throws
/// Error(InvalidTransition) when the event does not apply to the current
/// status, including Indemnify after a non-catastrophic adjustment.
LossNotice advance_notice(const LossNotice& notice, const NoticeEvent& event);

}  // namespace catastroagri::model
