#include "catastroagri/model/loss_notice.hpp"

#include "catastroagri/analytics/indemnity.hpp"
#include "catastroagri/error.hpp"
#include "catastroagri/model/record.hpp"

#include <type_traits>

namespace catastroagri::model {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void invalid(const NoticeStatus& from, std::string_view event) {
    throw Error(ErrorCode::InvalidTransition,
                std::string(event) + " does not apply to a notice in state " +
                    std::string(stage_name(from)));
}

}  // namespace

int stage_of(const NoticeStatus& status) noexcept { return static_cast<int>(status.index()); }

std::string_view stage_name(const NoticeStatus& status) noexcept {
    constexpr std::string_view names[] = {"Reported", "FieldEvaluated", "Adjusted", "Indemnified"};
    return names[status.index()];
}

LossNotice::LossNotice(std::string statistical_sector, Decimal hectares_affected,
                       Decimal hectares_lost, RiskPhenomenon phenomenon,
                       std::string vegetative_period, std::chrono::year_month_day occurrence_date,
                       NoticeStatus status)
    : statistical_sector_(std::move(statistical_sector)),
      hectares_affected_(hectares_affected),
      hectares_lost_(hectares_lost),
      phenomenon_(phenomenon),
      vegetative_period_(std::move(vegetative_period)),
      occurrence_date_(occurrence_date),
      status_(std::move(status)) {
    if (trim(statistical_sector_).empty()) {
        throw Error(ErrorCode::InvalidNotice, "statistical_sector must be non-empty");
    }
    if (hectares_affected_ < Decimal{} || hectares_lost_ < Decimal{}) {
        throw Error(ErrorCode::InvalidNotice, "hectares must be ≥ 0");
    }
    if (hectares_lost_ > hectares_affected_) {
        throw Error(ErrorCode::InvalidNotice, "hectares_lost must not exceed hectares_affected");
    }
    if (!occurrence_date_.ok()) {
        throw Error(ErrorCode::InvalidNotice, "occurrence_date is not a valid calendar date");
    }
    if (const auto* done = std::get_if<status::Indemnified>(&status_);
        done != nullptr && done->amount_soles < Decimal{}) {
        throw Error(ErrorCode::InvalidNotice, "indemnified amount must be ≥ 0");
    }
}

LossNotice advance_notice(const LossNotice& notice, const NoticeEvent& event) {
    const NoticeStatus& from = notice.status();
    NoticeStatus next = std::visit(
        overloaded{
            [&](const event::Evaluate&) -> NoticeStatus {
                if (!std::holds_alternative<status::Reported>(from)) invalid(from, "Evaluate");
                return status::FieldEvaluated{};
            },
            [&](const event::Adjust& e) -> NoticeStatus {
                if (!std::holds_alternative<status::FieldEvaluated>(from)) invalid(from, "Adjust");
                return status::Adjusted{e.catastrophic_loss};
            },
            [&](const event::Indemnify& e) -> NoticeStatus {
                const auto* adjusted = std::get_if<status::Adjusted>(&from);
                if (adjusted == nullptr) invalid(from, "Indemnify");
                if (!adjusted->catastrophic_loss) {
                    throw Error(ErrorCode::InvalidTransition,
                                "Indemnify requires an adjustment reporting catastrophic loss");
                }
                return status::Indemnified{
                    analytics::indemnity_due(e.insured_area_has, e.rate_soles_per_ha)};
            },
        },
        event);

    return LossNotice(notice.statistical_sector(), notice.hectares_affected(),
                      notice.hectares_lost(), notice.phenomenon(), notice.vegetative_period(),
                      notice.occurrence_date(), std::move(next));
}

}  // namespace catastroagri::model
