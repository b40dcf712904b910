#pragma once

#include "catastroagri/analytics/series.hpp"
#include "catastroagri/sarima/model.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace catastroagri::analytics {

struct ForecastRequest {
    SeriesSpec series;
    sarima::ForecastMethod method = sarima::ForecastMethod::Sarima;
    int s = 12;
    int h = 1;
};

struct ForecastOutcome {
    sarima::TimeSeries series;
    sarima::ForecastResult forecast;
    std::optional<sarima::SarimaFit> fit;                 // SARIMA only
    std::optional<sarima::DiagnosticsReport> diagnostics;  // SARIMA only
    std::vector<sarima::QqPoint> qq;                       // SARIMA only
};

/// "sarima", "linear" or "seasonal_naive_drift". Throws Error(BadRequest).
sarima::ForecastMethod parse_forecast_method(std::string_view name);

/// Builds the series, then fits + validates + forecasts (SARIMA) or extends
/// a straight line (linear).
ForecastOutcome run_forecast(const std::vector<model::InsuranceRecord>& records,
                             const ForecastRequest& request);

}  // namespace catastroagri::analytics
