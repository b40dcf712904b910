#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace catastroagri::model {

enum class RiskCategory { Climatic, Biological, Other };

enum class RiskKind {
    // Climatic
    Drought,
    ExcessiveOrUnseasonalRain,
    Landslide,
    Flood,
    LackOfSoilForHarvest,
    ExcessiveHumidity,
    FrostLowTemperature,
    HailSnow,
    HighTemperature,
    StrongWind,
    // Biological
    PestsPredators,
    Disease,
    // Other
    Fire,
    VolcanicEruption,
    Earthquake,
};

inline constexpr std::array<RiskKind, 15> kAllRiskKinds = {
    RiskKind::Drought,          RiskKind::ExcessiveOrUnseasonalRain,
    RiskKind::Landslide,        RiskKind::Flood,
    RiskKind::LackOfSoilForHarvest, RiskKind::ExcessiveHumidity,
    RiskKind::FrostLowTemperature,  RiskKind::HailSnow,
    RiskKind::HighTemperature,  RiskKind::StrongWind,
    RiskKind::PestsPredators,   RiskKind::Disease,
    RiskKind::Fire,             RiskKind::VolcanicEruption,
    RiskKind::Earthquake,
};

RiskCategory category_of(RiskKind kind) noexcept;
std::string_view to_string(RiskKind kind) noexcept;
std::string_view to_string(RiskCategory category) noexcept;
std::optional<RiskKind> parse_risk_kind(std::string_view name);

/// A covered phenomenon. The category is derived from the kind, so the pair
/// is consistent by construction.
class RiskPhenomenon {
public:
    explicit constexpr RiskPhenomenon(RiskKind kind) : kind_(kind) {}

    /// Throws Error(DomainError) when `kind` does not belong to `category`.
    static RiskPhenomenon make(RiskCategory category, RiskKind kind);

    constexpr RiskKind kind() const { return kind_; }
    RiskCategory category() const { return category_of(kind_); }

    friend constexpr bool operator==(RiskPhenomenon, RiskPhenomenon) = default;

private:
    RiskKind kind_;
};

}  // namespace catastroagri::model
