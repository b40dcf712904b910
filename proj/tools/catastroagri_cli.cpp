// Command-line front end: ingest, summarize, audit, fit, forecast, qq,
// simulate and serve.
//
// Exit status: 0 success, 1 bad input or usage, 2 model/computation failure.

#include "catastroagri/analytics/audit.hpp"
#include "catastroagri/analytics/forecasting.hpp"
#include "catastroagri/analytics/summary.hpp"
#include "catastroagri/error.hpp"
#include "catastroagri/ingest/dataset.hpp"
#include "catastroagri/sarima/model.hpp"
#include "catastroagri/service/json.hpp"
#include "catastroagri/service/server.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

using namespace catastroagri;

constexpr int kExitInput = 1;
constexpr int kExitComputation = 2;

enum class Format { Table, Csv, Json };

struct InputFailure {
    std::string message;
};

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::to_string(v);
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

ingest::Dataset load(const std::string& path) {
    const auto format = ingest::detect_format(path);
    if (!format.is_csv()) {
        throw Error(ErrorCode::UnsupportedFormat,
                    "the file format is not supported: '" + path + "' (extension '" + format.extension +
                        "'); export the register as CSV");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputFailure{"cannot open '" + path + "'"};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return ingest::parse_csv(buffer.str(), ingest::HeaderMapping::standard(), path);
}

void report_row_errors(const ingest::Dataset& ds) {
    for (const auto& e : ds.row_errors) std::cerr << "warning: row " << e.row << ": " << e.message << '\n';
}

/// Left-aligned text columns, right-aligned numeric ones.
void print_aligned(std::ostream& os, const ingest::Table& table, std::size_t first_numeric_column) {
    std::vector<std::size_t> width(table.columns.size(), 0);
    auto measure = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    };
    measure(table.columns);
    for (const auto& r : table.rows) measure(r);
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i != 0) os << "  ";
            if (i >= first_numeric_column) os << std::setw(static_cast<int>(width[i])) << std::right << row[i];
            else os << std::setw(static_cast<int>(width[i])) << std::left << row[i];
        }
        os << '\n';
    };
    emit(table.columns);
    for (const auto& r : table.rows) emit(r);
}

void add_format_option(CLI::App* cmd, Format& format) {
    cmd->add_option("--format", format, "Output format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, Format>{{"table", Format::Table}, {"csv", Format::Csv}, {"json", Format::Json}},
            CLI::ignore_case))
        ->default_str("table");
}

struct SeriesOptions {
    std::string metric = "insured";
    std::optional<std::string> period_column;
    std::vector<std::string> filters;
    int s = 12;
};

void add_series_options(CLI::App* cmd, SeriesOptions& opts) {
    cmd->add_option("--metric", opts.metric, "sown, insured, indemnity or producers")->capture_default_str();
    cmd->add_option("--period-column", opts.period_column,
                    "Dimension whose values label the periods, or 'order' for one period per record");
    cmd->add_option("--filter", opts.filters, "Restrict to dimension=value (repeatable)");
    cmd->add_option("--s", opts.s, "Seasonal period")->capture_default_str()->check(CLI::PositiveNumber);
}

analytics::SeriesSpec series_spec(const SeriesOptions& opts) {
    analytics::SeriesSpec spec;
    spec.metric = analytics::parse_metric(opts.metric);
    spec.filters = analytics::parse_filters(opts.filters);
    spec.period_column = opts.period_column;
    return spec;
}

int run_ingest(const std::string& file, Format format) {
    const auto ds = load(file);
    std::size_t warnings = 0;
    for (const auto& r : ds.records) warnings += model::validate_record(r).warnings.size();
    switch (format) {
        case Format::Json:
            std::cout << service::dataset_json(ds).dump(2) << '\n';
            break;
        case Format::Csv:
            std::cout << ingest::export_csv(ds.records);
            break;
        case Format::Table:
            std::cout << "source:      " << file << '\n'
                      << "data rows:   " << ds.data_rows << '\n'
                      << "records:     " << ds.records.size() << '\n'
                      << "row errors:  " << ds.row_errors.size() << '\n'
                      << "warnings:    " << warnings << '\n';
            for (const auto& e : ds.row_errors) std::cout << "  row " << e.row << ": " << e.message << '\n';
            break;
    }
    return 0;
}

int run_summarize(const std::string& file, const std::string& by, const std::vector<std::string>& filters,
                  std::optional<std::size_t> top, const std::string& metric, Format format) {
    const auto ds = load(file);
    report_row_errors(ds);
    const auto summary = analytics::summarize(ds.records, analytics::parse_dimensions(by),
                                              analytics::parse_filters(filters));
    analytics::Summary shown = summary;
    if (top) shown.rows = analytics::top_k(summary.rows, analytics::parse_metric(metric), *top);

    switch (format) {
        case Format::Json:
            std::cout << service::summary_json(summary, shown.rows).dump(2) << '\n';
            break;
        case Format::Csv:
            std::cout << ingest::export_csv(analytics::summary_table(shown));
            break;
        case Format::Table:
            if (summary.empty()) std::cout << "no rows match\n";
            print_aligned(std::cout, analytics::summary_table(shown, true), shown.by.size());
            break;
    }
    return 0;
}

int run_audit(const std::string& file, const std::string& rates, Format format) {
    const auto ds = load(file);
    report_row_errors(ds);
    const auto report = analytics::rate_audit(ds.records, analytics::parse_rates(rates));
    switch (format) {
        case Format::Json:
            std::cout << service::audit_json(report, ds.records).dump(2) << '\n';
            break;
        case Format::Csv: {
            ingest::Table t{{"RATE", "MATCHED", "RECORDS", "FRACTION"}, {}};
            for (const auto& r : report.per_rate) {
                t.rows.push_back({r.rate.to_string(), std::to_string(r.matched),
                                  std::to_string(report.record_count), shortest(r.fraction)});
            }
            std::cout << ingest::export_csv(t);
            break;
        }
        case Format::Table:
            for (std::size_t i = 0; i < report.per_rate.size(); ++i) {
                const auto& r = report.per_rate[i];
                std::cout << (i == 0 ? "" : ", ") << r.rate.to_string() << ": " << r.matched << '/'
                          << report.record_count;
            }
            std::cout << '\n';
            std::cout << "indeterminate: " << report.indeterminate << '\n';
            for (std::size_t i : report.unmatched_indices()) {
                const auto& rec = ds.records[i];
                std::cout << "unmatched record " << i + 1 << ": insured " << rec.insured_area_has.to_string()
                          << " ha, indemnity " << rec.indemnity_amount_soles.to_string() << '\n';
            }
            break;
    }
    return 0;
}

void print_fit(std::ostream& os, const sarima::SarimaFit& fit, const sarima::DiagnosticsReport& diag) {
    ingest::Table coef{{"TYPE", "COEF", "SE_COEF", "T", "P"}, {}};
    coef.rows.push_back({"MA 1", fixed(fit.theta, 4), fixed(fit.se_theta, 4), fixed(fit.t_theta, 2),
                         fixed(fit.p_theta, 3)});
    coef.rows.push_back({"SMA " + std::to_string(fit.spec.s), fixed(fit.seasonal_theta, 4),
                         fixed(fit.se_seasonal_theta, 4), fixed(fit.t_seasonal_theta, 2),
                         fixed(fit.p_seasonal_theta, 3)});
    print_aligned(os, coef, 1);
    os << "\nw = theta * Theta = " << fixed(fit.w, 7) << '\n'
       << "sigma^2 = " << shortest(fit.sigma2) << "  css = " << shortest(fit.css) << "  m = " << fit.m << "\n\n";

    ingest::Table lb{{"LAG", "Q", "DF", "P"}, {}};
    for (const auto& r : diag.ljung_box_rows) {
        lb.rows.push_back({std::to_string(r.lag), fixed(r.q, 2), std::to_string(r.df), fixed(r.p_value, 3)});
    }
    print_aligned(os, lb, 0);
    auto mark = [](bool ok) { return ok ? "yes" : "no"; };
    os << "\ninvertible (|MA| < 1):          " << mark(diag.condition_invertible) << '\n'
       << "coefficients significant:       " << mark(diag.condition_params_significant) << '\n'
       << "residuals white (LB p > alpha): " << mark(diag.condition_whiteness) << '\n'
       << "verdict: " << (diag.verdict ? "adequate" : "not adequate") << '\n';
}

int run_fit(const std::string& file, const SeriesOptions& opts, Format format) {
    const auto ds = load(file);
    report_row_errors(ds);
    const auto series = analytics::build_series(ds.records, series_spec(opts), opts.s);
    sarima::SarimaSpec spec;
    spec.s = opts.s;
    const auto fit = sarima::fit(series, spec);
    const auto diag = sarima::validate(fit);
    switch (format) {
        case Format::Json:
            std::cout << service::json{{"fit", service::fit_json(fit)},
                                       {"diagnostics", service::diagnostics_json(diag)}}
                             .dump(2)
                      << '\n';
            break;
        case Format::Csv: {
            ingest::Table t{{"PARAMETER", "COEF", "SE", "T", "P"}, {}};
            t.rows.push_back({"MA1", shortest(fit.theta), shortest(fit.se_theta), shortest(fit.t_theta),
                              shortest(fit.p_theta)});
            t.rows.push_back({"SMA" + std::to_string(fit.spec.s), shortest(fit.seasonal_theta),
                              shortest(fit.se_seasonal_theta), shortest(fit.t_seasonal_theta),
                              shortest(fit.p_seasonal_theta)});
            std::cout << ingest::export_csv(t);
            break;
        }
        case Format::Table:
            print_fit(std::cout, fit, diag);
            break;
    }
    return 0;
}

int run_forecast(const std::string& file, const SeriesOptions& opts, int h, const std::string& method,
                 Format format) {
    const auto ds = load(file);
    report_row_errors(ds);
    analytics::ForecastRequest request;
    request.series = series_spec(opts);
    request.method = analytics::parse_forecast_method(method);
    request.s = opts.s;
    request.h = h;
    const auto outcome = analytics::run_forecast(ds.records, request);

    switch (format) {
        case Format::Json:
            std::cout << service::forecast_json(outcome).dump(2) << '\n';
            break;
        case Format::Csv: {
            ingest::Table t{{"STEP", "FORECAST"}, {}};
            for (std::size_t j = 0; j < outcome.forecast.point_forecasts.size(); ++j) {
                t.rows.push_back({std::to_string(j + 1), shortest(outcome.forecast.point_forecasts[j])});
            }
            std::cout << ingest::export_csv(t);
            break;
        }
        case Format::Table: {
            ingest::Table t{{"STEP", "FORECAST"}, {}};
            for (std::size_t j = 0; j < outcome.forecast.point_forecasts.size(); ++j) {
                t.rows.push_back({std::to_string(j + 1), shortest(outcome.forecast.point_forecasts[j])});
            }
            print_aligned(std::cout, t, 0);
            if (outcome.diagnostics) {
                std::cout << "verdict: " << (outcome.diagnostics->verdict ? "adequate" : "not adequate") << '\n';
            }
            break;
        }
    }
    return 0;
}

int run_qq(const std::string& file, const SeriesOptions& opts, Format format) {
    const auto ds = load(file);
    report_row_errors(ds);
    const auto series = analytics::build_series(ds.records, series_spec(opts), opts.s);
    sarima::SarimaSpec spec;
    spec.s = opts.s;
    const auto points = sarima::qq_data(sarima::fit(series, spec).residuals);
    if (format == Format::Json) {
        std::cout << service::qq_json(points).dump(2) << '\n';
        return 0;
    }
    ingest::Table t{{"THEORETICAL", "OBSERVED"}, {}};
    for (const auto& p : points) t.rows.push_back({shortest(p.theoretical), shortest(p.observed)});
    if (format == Format::Csv) std::cout << ingest::export_csv(t);
    else print_aligned(std::cout, t, 0);
    return 0;
}

/// Writes a simulated airline-model series as a register CSV with one
/// record per month, labelled YYYY-MM.
int run_simulate(double theta, double seasonal_theta, double sigma, int s, std::size_t n, std::uint64_t seed,
                 double offset, int start_year) {
    const auto series = sarima::simulate(theta, seasonal_theta, sigma, s, n, seed);
    std::vector<model::InsuranceRecord> records;
    for (std::size_t t = 0; t < series.size(); ++t) {
        const double value = offset + series.values()[t];
        if (value < 0.0) {
            throw Error(ErrorCode::DomainError, "offset too small: simulated value " + shortest(value) + " < 0");
        }
        model::InsuranceRecord r;
        char label[16];
        std::snprintf(label, sizeof label, "%04d-%02d", start_year + static_cast<int>(t / 12),
                      static_cast<int>(t % 12) + 1);
        r.campaign_year = label;
        r.province = "SIMULATED";
        r.district = "SIMULATED";
        r.statistical_sector = "SIMULATED";
        r.crop_name = "SIMULATED";
        r.insured_area_has = Decimal::from_double(value);
        r.sown_area_has = r.insured_area_has;
        records.push_back(std::move(r));
    }
    std::cout << ingest::export_csv(records);
    return 0;
}

int run_serve(service::ServerConfig config) {
    service::ApiServer server(config);
    std::cerr << "listening on http://" << config.host << ':' << config.port << '\n';
    if (!server.listen()) {
        std::cerr << "error: cannot bind " << config.host << ':' << config.port << '\n';
        return kExitInput;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Catastrophic agricultural insurance analytics"};
    app.require_subcommand(1);

    Format format = Format::Table;
    std::string file;

    auto* ingest_cmd = app.add_subcommand("ingest", "Parse and validate a register file");
    ingest_cmd->add_option("file", file, "Register CSV")->required();
    add_format_option(ingest_cmd, format);

    std::string by;
    std::vector<std::string> filters;
    std::optional<std::size_t> top;
    std::string metric = "insured";
    auto* summarize_cmd = app.add_subcommand("summarize", "Group totals by dimensions");
    summarize_cmd->add_option("file", file, "Register CSV")->required();
    summarize_cmd->add_option("--by", by, "Comma-separated: campaign, province, district, sector, crop")->required();
    summarize_cmd->add_option("--filter", filters, "Restrict to dimension=value (repeatable)");
    summarize_cmd->add_option("--top", top, "Keep the k largest rows")->check(CLI::PositiveNumber);
    summarize_cmd->add_option("--metric", metric, "Ranking metric for --top")->capture_default_str();
    add_format_option(summarize_cmd, format);

    std::string rates = "400,800";
    auto* audit_cmd = app.add_subcommand("audit", "Check amounts against rate × insured area");
    audit_cmd->add_option("file", file, "Register CSV")->required();
    audit_cmd->add_option("--rates", rates, "Candidate soles per hectare")->capture_default_str();
    add_format_option(audit_cmd, format);

    SeriesOptions series_opts;
    auto* fit_cmd = app.add_subcommand("fit", "Estimate ARIMA(0,1,1)(0,1,1)s and run diagnostics");
    fit_cmd->add_option("file", file, "Register CSV")->required();
    add_series_options(fit_cmd, series_opts);
    add_format_option(fit_cmd, format);

    int horizon = 1;
    std::string method = "sarima";
    auto* forecast_cmd = app.add_subcommand("forecast", "Point forecasts");
    forecast_cmd->set_help_flag("--help", "Print this help message and exit");
    forecast_cmd->add_option("file", file, "Register CSV")->required();
    add_series_options(forecast_cmd, series_opts);
    forecast_cmd->add_option("--h", horizon, "Horizon")->required()->check(CLI::PositiveNumber);
    forecast_cmd->add_option("--method", method, "sarima or linear")->capture_default_str();
    add_format_option(forecast_cmd, format);

    auto* qq_cmd = app.add_subcommand("qq", "Normal probability plot pairs of SARIMA residuals");
    qq_cmd->add_option("file", file, "Register CSV")->required();
    add_series_options(qq_cmd, series_opts);
    add_format_option(qq_cmd, format);

    double sim_theta = 0.89, sim_seasonal = 0.92, sim_sigma = 1.0, sim_offset = 500.0;
    int sim_s = 12, sim_start = 2001;
    std::size_t sim_n = 240;
    std::uint64_t sim_seed = 1;
    auto* simulate_cmd = app.add_subcommand("simulate", "Emit a simulated register CSV for testing");
    simulate_cmd->add_option("--theta", sim_theta)->capture_default_str();
    simulate_cmd->add_option("--seasonal-theta", sim_seasonal)->capture_default_str();
    simulate_cmd->add_option("--sigma", sim_sigma)->capture_default_str();
    simulate_cmd->add_option("--s", sim_s)->capture_default_str();
    simulate_cmd->add_option("--n", sim_n)->capture_default_str();
    simulate_cmd->add_option("--seed", sim_seed)->capture_default_str();
    simulate_cmd->add_option("--offset", sim_offset, "Level added to keep areas non-negative")->capture_default_str();
    simulate_cmd->add_option("--start-year", sim_start)->capture_default_str();

    service::ServerConfig server_config = service::config_from_environment();
    std::string ui_dir;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--port", server_config.port)->capture_default_str();
    serve_cmd->add_option("--host", server_config.host)->capture_default_str();
    serve_cmd->add_option("--ui-dir", ui_dir, "Directory of built web UI assets to serve at /");
    serve_cmd->add_option("--max-datasets", server_config.max_datasets)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*ingest_cmd) return run_ingest(file, format);
        if (*summarize_cmd) return run_summarize(file, by, filters, top, metric, format);
        if (*audit_cmd) return run_audit(file, rates, format);
        if (*fit_cmd) return run_fit(file, series_opts, format);
        if (*forecast_cmd) return run_forecast(file, series_opts, horizon, method, format);
        if (*qq_cmd) return run_qq(file, series_opts, format);
        if (*simulate_cmd) {
            return run_simulate(sim_theta, sim_seasonal, sim_sigma, sim_s, sim_n, sim_seed, sim_offset, sim_start);
        }
        if (*serve_cmd) {
            if (!ui_dir.empty()) server_config.ui_dir = ui_dir;
            return run_serve(server_config);
        }
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
        return is_computation_error(e.code()) ? kExitComputation : kExitInput;
    } catch (const InputFailure& e) {
        std::cerr << "error: " << e.message << '\n';
        return kExitInput;
    }
    return kExitInput;
}
