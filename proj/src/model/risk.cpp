#include "catastroagri/model/risk.hpp"

#include "catastroagri/error.hpp"

#include <string>

namespace catastroagri::model {

RiskCategory category_of(RiskKind kind) noexcept {
    switch (kind) {
        case RiskKind::Drought:
        case RiskKind::ExcessiveOrUnseasonalRain:
        case RiskKind::Landslide:
        case RiskKind::Flood:
        case RiskKind::LackOfSoilForHarvest:
        case RiskKind::ExcessiveHumidity:
        case RiskKind::FrostLowTemperature:
        case RiskKind::HailSnow:
        case RiskKind::HighTemperature:
        case RiskKind::StrongWind:
            return RiskCategory::Climatic;
        case RiskKind::PestsPredators:
        case RiskKind::Disease:
            return RiskCategory::Biological;
        case RiskKind::Fire:
        case RiskKind::VolcanicEruption:
        case RiskKind::Earthquake:
            return RiskCategory::Other;
    }
    return RiskCategory::Other;
}

std::string_view to_string(RiskKind kind) noexcept {
    switch (kind) {
        case RiskKind::Drought: return "Drought";
        case RiskKind::ExcessiveOrUnseasonalRain: return "ExcessiveOrUnseasonalRain";
        case RiskKind::Landslide: return "Landslide";
        case RiskKind::Flood: return "Flood";
        case RiskKind::LackOfSoilForHarvest: return "LackOfSoilForHarvest";
        case RiskKind::ExcessiveHumidity: return "ExcessiveHumidity";
        case RiskKind::FrostLowTemperature: return "FrostLowTemperature";
        case RiskKind::HailSnow: return "HailSnow";
        case RiskKind::HighTemperature: return "HighTemperature";
        case RiskKind::StrongWind: return "StrongWind";
        case RiskKind::PestsPredators: return "PestsPredators";
        case RiskKind::Disease: return "Disease";
        case RiskKind::Fire: return "Fire";
        case RiskKind::VolcanicEruption: return "VolcanicEruption";
        case RiskKind::Earthquake: return "Earthquake";
    }
    return "Unknown";
}

std::string_view to_string(RiskCategory category) noexcept {
    switch (category) {
        case RiskCategory::Climatic: return "Climatic";
        case RiskCategory::Biological: return "Biological";
        case RiskCategory::Other: return "Other";
    }
    return "Unknown";
}

std::optional<RiskKind> parse_risk_kind(std::string_view name) {
    for (RiskKind kind : kAllRiskKinds) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

RiskPhenomenon RiskPhenomenon::make(RiskCategory category, RiskKind kind) {
    if (category_of(kind) != category) {
        throw Error(ErrorCode::DomainError, std::string(to_string(kind)) + " is not a " +
                                                std::string(to_string(category)) + " risk");
    }
    return RiskPhenomenon(kind);
}

}  // namespace catastroagri::model
