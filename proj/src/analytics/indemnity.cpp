#include "catastroagri/analytics/indemnity.hpp"

#include "catastroagri/error.hpp"
#include "catastroagri/model/record.hpp"

#include <nlohmann/json.hpp>

namespace catastroagri::analytics {

namespace {

void require_positive_rate(Decimal rate) {
    if (rate <= Decimal{}) {
        throw Error(ErrorCode::InvalidRate, "rate must be > 0, got " + rate.to_string());
    }
}

Decimal rate_from_json(const nlohmann::json& value) {
    std::optional<Decimal> rate;
    if (value.is_string()) {
        rate = Decimal::parse(value.get<std::string>());
    } else if (value.is_number_integer()) {
        rate = Decimal::from_integer(value.get<std::int64_t>());
    } else if (value.is_number()) {
        rate = Decimal::parse(value.dump());
    }
    if (!rate) throw Error(ErrorCode::BadRequest, "rate is not a decimal: " + value.dump());
    require_positive_rate(*rate);
    return *rate;
}

}  // namespace

Decimal indemnity_due(Decimal insured_area_has, Decimal rate_soles_per_ha) {
    require_positive_rate(rate_soles_per_ha);
    if (insured_area_has < Decimal{}) {
        throw Error(ErrorCode::DomainError, "insured area must be ≥ 0");
    }
    return Decimal::rounded_product(insured_area_has, rate_soles_per_ha);
}

RateSchedule::RateSchedule(Decimal default_rate) : default_rate_(default_rate) {
    require_positive_rate(default_rate);
}

void RateSchedule::set_campaign_rate(std::string campaign_year, Decimal rate) {
    require_positive_rate(rate);
    campaign_rates_[std::string(model::trim(campaign_year))] = rate;
}

Decimal RateSchedule::rate_for(std::string_view campaign_year) const {
    const auto it = campaign_rates_.find(model::trim(campaign_year));
    return it == campaign_rates_.end() ? default_rate_ : it->second;
}

RateSchedule RateSchedule::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadRequest, std::string("rate schedule is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::BadRequest, "rate schedule must be a JSON object");

    RateSchedule schedule;
    if (const auto it = doc.find("default_rate_soles_per_ha"); it != doc.end()) {
        schedule.default_rate_ = rate_from_json(*it);
    }
    if (const auto it = doc.find("campaign_rates"); it != doc.end()) {
        if (!it->is_object()) throw Error(ErrorCode::BadRequest, "campaign_rates must be an object");
        for (const auto& [campaign, rate] : it->items()) {
            schedule.set_campaign_rate(campaign, rate_from_json(rate));
        }
    }
    return schedule;
}

}  // namespace catastroagri::analytics
