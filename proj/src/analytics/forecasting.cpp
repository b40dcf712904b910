#include "catastroagri/analytics/forecasting.hpp"

#include "catastroagri/error.hpp"

namespace catastroagri::analytics {

sarima::ForecastMethod parse_forecast_method(std::string_view name) {
    const std::string key = match_key(name);
    if (key == "SARIMA") return sarima::ForecastMethod::Sarima;
    if (key == "LINEAR") return sarima::ForecastMethod::LinearTrend;
    if (key == "SEASONAL_NAIVE_DRIFT") return sarima::ForecastMethod::SeasonalNaiveDrift;
    throw Error(ErrorCode::BadRequest, "unknown forecast method '" + std::string(name) +
                                           "' (expected sarima or linear)");
}

ForecastOutcome run_forecast(const std::vector<model::InsuranceRecord>& records,
                             const ForecastRequest& request) {
    if (request.h < 1) throw Error(ErrorCode::HorizonInvalid, "forecast horizon must be ≥ 1");
    auto series = build_series(records, request.series, request.s);

    switch (request.method) {
        case sarima::ForecastMethod::LinearTrend: {
            auto result = sarima::linear_trend_forecast(series, request.h);
            return {std::move(series), std::move(result), std::nullopt, std::nullopt, {}};
        }
        case sarima::ForecastMethod::SeasonalNaiveDrift: {
            auto result = sarima::seasonal_naive_drift_forecast(series, request.h);
            return {std::move(series), std::move(result), std::nullopt, std::nullopt, {}};
        }
        case sarima::ForecastMethod::Sarima:
            break;
    }

    sarima::SarimaSpec spec;
    spec.s = request.s;
    auto fit = sarima::fit(series, spec);
    auto diagnostics = sarima::validate(fit);
    auto result = sarima::forecast(series, fit, request.h);
    auto qq = sarima::qq_data(fit.residuals);
    return {std::move(series), std::move(result), std::move(fit), std::move(diagnostics), std::move(qq)};
}

}  // namespace catastroagri::analytics
