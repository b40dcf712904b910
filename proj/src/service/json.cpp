#include "catastroagri/service/json.hpp"

#include <chrono>

namespace catastroagri::service {

namespace {

json totals_json(const analytics::SummaryRow& row) {
    return {
        {"sown", row.total_sown_has.to_string()},
        {"insured", row.total_insured_has.to_string()},
        {"indemnity", row.total_indemnity_soles.to_string()},
        {"producers", row.total_producers},
        {"record_count", row.record_count},
    };
}

std::vector<analytics::Filter> filters_from_json(const json& spec) {
    if (spec.is_null()) return {};
    std::vector<std::string> items;
    if (spec.is_array()) {
        for (const auto& item : spec) {
            if (!item.is_string()) throw Error(ErrorCode::BadRequest, "group_filter items must be strings");
            items.push_back(item.get<std::string>());
        }
    } else if (spec.is_object()) {
        for (const auto& [dim, values] : spec.items()) {
            if (values.is_string()) {
                items.push_back(dim + ":" + values.get<std::string>());
            } else if (values.is_array()) {
                for (const auto& v : values) {
                    if (!v.is_string()) throw Error(ErrorCode::BadRequest, "group_filter values must be strings");
                    items.push_back(dim + ":" + v.get<std::string>());
                }
            } else {
                throw Error(ErrorCode::BadRequest, "group_filter values must be strings or arrays");
            }
        }
    } else {
        throw Error(ErrorCode::BadRequest, "group_filter must be an object or an array");
    }
    return analytics::parse_filters(items);
}

int int_field(const json& body, const char* name, int fallback) {
    const auto it = body.find(name);
    if (it == body.end() || it->is_null()) return fallback;
    if (!it->is_number_integer()) throw Error(ErrorCode::BadRequest, std::string(name) + " must be an integer");
    return it->get<int>();
}

}  // namespace

json error_json(ErrorCode code, std::string_view message) {
    return {{"code", std::string(to_string(code))}, {"message", std::string(message)}};
}

json dataset_json(const ingest::Dataset& dataset) {
    json errors = json::array();
    for (const auto& e : dataset.row_errors) errors.push_back({{"row", e.row}, {"message", e.message}});
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                          dataset.ingested_at.time_since_epoch())
                          .count();
    return {
        {"id", dataset.id},
        {"source_name", dataset.source_name},
        {"ingested_at_unix", secs},
        {"record_count", dataset.records.size()},
        {"row_error_count", dataset.row_errors.size()},
        {"row_errors", std::move(errors)},
        {"columns", dataset.columns},
    };
}

json record_json(const model::InsuranceRecord& r) {
    return {
        {"campaign_year", r.campaign_year},
        {"province", r.province},
        {"district", r.district},
        {"statistical_sector", r.statistical_sector},
        {"crop_name", r.crop_name},
        {"sown_area_has", r.sown_area_has.to_string()},
        {"insured_area_has", r.insured_area_has.to_string()},
        {"indemnity_amount_soles", r.indemnity_amount_soles.to_string()},
        {"producers_benefited", r.producers_benefited},
    };
}

json summary_row_json(const analytics::SummaryRow& row) {
    json out = totals_json(row);
    json group = json::object();
    json key = json::array();
    for (const auto& [dim, value] : row.group_key) {
        group[std::string(analytics::to_string(dim))] = value;
        key.push_back({std::string(analytics::to_string(dim)), value});
    }
    out["group"] = std::move(group);
    out["group_key"] = std::move(key);
    return out;
}

json summary_json(const analytics::Summary& summary, const std::vector<analytics::SummaryRow>& rows) {
    json by = json::array();
    for (auto d : summary.by) by.push_back(std::string(analytics::to_string(d)));
    json out_rows = json::array();
    for (const auto& row : rows) out_rows.push_back(summary_row_json(row));
    return {
        {"by", std::move(by)},
        {"rows", std::move(out_rows)},
        {"grand_total", totals_json(summary.grand_total)},
        {"empty", summary.empty()},
    };
}

json audit_json(const analytics::AuditReport& report, const std::vector<model::InsuranceRecord>& records) {
    json matches = json::object();
    json rates = json::array();
    for (const auto& tally : report.per_rate) {
        matches[tally.rate.to_string()] = tally.matched;
        rates.push_back({{"rate", tally.rate.to_string()},
                         {"matched", tally.matched},
                         {"fraction", tally.fraction}});
    }
    auto listed = [&](const std::vector<std::size_t>& indices) {
        json arr = json::array();
        for (std::size_t i : indices) {
            json item = record_json(records.at(i));
            item["row"] = i + 1;
            arr.push_back(std::move(item));
        }
        return arr;
    };
    return {
        {"record_count", report.record_count},
        {"matches", std::move(matches)},
        {"rates", std::move(rates)},
        {"indeterminate_count", report.indeterminate},
        {"unmatched", listed(report.unmatched_indices())},
        {"indeterminate", listed(report.indeterminate_indices())},
    };
}

json fit_json(const sarima::SarimaFit& fit) {
    return {
        {"d", fit.spec.d},
        {"seasonal_d", fit.spec.seasonal_d},
        {"s", fit.spec.s},
        {"theta", fit.theta},
        {"seasonal_theta", fit.seasonal_theta},
        {"w", fit.w},
        {"se_theta", fit.se_theta},
        {"se_seasonal_theta", fit.se_seasonal_theta},
        {"t_theta", fit.t_theta},
        {"t_seasonal_theta", fit.t_seasonal_theta},
        {"p_theta", fit.p_theta},
        {"p_seasonal_theta", fit.p_seasonal_theta},
        {"sigma2", fit.sigma2},
        {"css", fit.css},
        {"m", fit.m},
        {"residuals", fit.residuals},
    };
}

json diagnostics_json(const sarima::DiagnosticsReport& report) {
    json rows = json::array();
    for (const auto& r : report.ljung_box_rows) {
        rows.push_back({{"lag", r.lag}, {"q", r.q}, {"df", r.df}, {"p_value", r.p_value}});
    }
    return {
        {"alpha", report.alpha},
        {"ljung_box", std::move(rows)},
        {"condition_invertible", report.condition_invertible},
        {"condition_params_significant", report.condition_params_significant},
        {"condition_whiteness", report.condition_whiteness},
        {"verdict", report.verdict},
    };
}

json qq_json(const std::vector<sarima::QqPoint>& points) {
    json arr = json::array();
    for (const auto& p : points) arr.push_back({{"theoretical", p.theoretical}, {"observed", p.observed}});
    return arr;
}

json forecast_json(const analytics::ForecastOutcome& outcome) {
    json out = {
        {"method", std::string(sarima::to_string(outcome.forecast.method))},
        {"series", {{"labels", outcome.series.labels()}, {"values", outcome.series.values()}}},
        {"forecast",
         {{"origin", outcome.forecast.origin},
          {"horizon", outcome.forecast.horizon},
          {"point_forecasts", outcome.forecast.point_forecasts}}},
    };
    if (outcome.fit) out["fit"] = fit_json(*outcome.fit);
    if (outcome.diagnostics) out["diagnostics"] = diagnostics_json(*outcome.diagnostics);
    if (outcome.fit) out["qq"] = qq_json(outcome.qq);
    return out;
}

analytics::ForecastRequest parse_forecast_request(const json& body) {
    if (!body.is_object()) throw Error(ErrorCode::BadRequest, "forecast body must be a JSON object");
    analytics::ForecastRequest request;

    const json spec = body.value("series_spec", json::object());
    if (!spec.is_object()) throw Error(ErrorCode::BadRequest, "series_spec must be an object");
    if (const auto it = spec.find("metric"); it != spec.end()) {
        if (!it->is_string()) throw Error(ErrorCode::BadRequest, "metric must be a string");
        request.series.metric = analytics::parse_metric(it->get<std::string>());
    }
    if (const auto it = spec.find("group_filter"); it != spec.end()) {
        request.series.filters = filters_from_json(*it);
    }
    if (const auto it = spec.find("period_column_or_order"); it != spec.end() && !it->is_null()) {
        if (!it->is_string()) throw Error(ErrorCode::BadRequest, "period_column_or_order must be a string");
        request.series.period_column = it->get<std::string>();
    }

    if (const auto it = body.find("method"); it != body.end()) {
        if (!it->is_string()) throw Error(ErrorCode::BadRequest, "method must be a string");
        request.method = analytics::parse_forecast_method(it->get<std::string>());
    }
    request.s = int_field(body, "s", 12);
    request.h = int_field(body, "h", 1);
    if (request.s < 1) throw Error(ErrorCode::BadRequest, "s must be ≥ 1");
    return request;
}

}  // namespace catastroagri::service
