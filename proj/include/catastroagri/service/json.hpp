#pragma once

#include "catastroagri/analytics/audit.hpp"
#include "catastroagri/analytics/forecasting.hpp"
#include "catastroagri/analytics/summary.hpp"
#include "catastroagri/error.hpp"
#include "catastroagri/ingest/dataset.hpp"

#include <nlohmann/json.hpp>

// JSON shapes shared by the HTTP API and `--format json` on the CLI.
// Areas and money are decimal strings; counts are integers.
namespace catastroagri::service {

using nlohmann::json;

json error_json(ErrorCode code, std::string_view message);
json dataset_json(const ingest::Dataset& dataset);
json record_json(const model::InsuranceRecord& record);
json summary_row_json(const analytics::SummaryRow& row);
json summary_json(const analytics::Summary& summary, const std::vector<analytics::SummaryRow>& rows);
json audit_json(const analytics::AuditReport& report, const std::vector<model::InsuranceRecord>& records);
json fit_json(const sarima::SarimaFit& fit);
json diagnostics_json(const sarima::DiagnosticsReport& report);
json forecast_json(const analytics::ForecastOutcome& outcome);
json qq_json(const std::vector<sarima::QqPoint>& points);

/// Parses the body of POST /datasets/{id}/forecast. Throws Error(BadRequest)
/// (or the parse errors of metrics/dimensions) on malformed input.
analytics::ForecastRequest parse_forecast_request(const json& body);

}  // namespace catastroagri::service
