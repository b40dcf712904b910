// Acceptance suite: one PASS/FAIL line per primary criterion. Exit status is
// the number of failed criteria.

#include "catastroagri/analytics/audit.hpp"
#include "catastroagri/analytics/summary.hpp"
#include "catastroagri/ingest/csv.hpp"
#include "catastroagri/ingest/dataset.hpp"
#include "catastroagri/sarima/model.hpp"
#include "catastroagri/stats/kernel.hpp"

#include "support/generators.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace catastroagri;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int failures = 0;

void criterion(const char* name, const std::function<Outcome()>& check) {
    const auto start = Clock::now();
    Outcome outcome;
    try {
        outcome = check();
    } catch (const std::exception& e) {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = ms_since(start);
    if (!outcome.pass) ++failures;
    std::printf("%s  %-28s %s  [%.1f ms]\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str(), elapsed);
    std::fflush(stdout);
}

ingest::Dataset load(const char* name) {
    return ingest::parse_csv(testgen::read_file(testgen::fixture(name)), ingest::HeaderMapping::standard(), name);
}

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Decimal dec(std::int64_t v) { return Decimal::from_integer(v); }

sarima::SarimaFit fixed_fit(double theta, double seasonal_theta) {
    sarima::SarimaFit f;
    f.theta = theta;
    f.seasonal_theta = seasonal_theta;
    return f;
}

}  // namespace

int main() {
    criterion("crop-totals", [] {
        const auto start = Clock::now();
        const auto ds = load("puno_2010_2011_by_crop.csv");
        const auto s = analytics::summarize(ds.records, {analytics::Dimension::Crop});
        const double elapsed = ms_since(start);
        const auto& t = s.grand_total;
        const bool ok = s.rows.size() == 5 && t.total_insured_has == dec(14838) &&
                        t.total_indemnity_soles == dec(5935200) && t.total_producers == 47929 && elapsed < 1000.0;
        return Outcome{ok, fmt("insured %s indemnity %s producers %lld rows %zu in %.2f ms (< 1000)",
                               t.total_insured_has.to_string().c_str(), t.total_indemnity_soles.to_string().c_str(),
                               static_cast<long long>(t.total_producers), s.rows.size(), elapsed)};
    });

    criterion("province-rows", [] {
        const std::vector<std::tuple<std::string, int, int>> expected = {
            {"CHUCUITO", 1817, 726800}, {"EL COLLAO", 3910, 1564000}, {"AZANGARO", 3019, 1207600},
            {"CARABAYA", 700, 280000},  {"HUANCANE", 1399, 559600},   {"LAMPA", 932, 372800},
            {"MELGAR", 1455, 582000},   {"SAN ROMAN", 766, 306400},   {"YUNGUYO", 840, 336000}};
        const auto s = analytics::summarize(load("puno_2011_by_province.csv").records,
                                            {analytics::Dimension::Province});
        std::size_t matched = 0;
        for (const auto& [name, area, amount] : expected) {
            for (const auto& row : s.rows) {
                if (row.group_key[0].second == name && row.total_insured_has == dec(area) &&
                    row.total_indemnity_soles == dec(amount)) {
                    ++matched;
                }
            }
        }
        const auto top = analytics::top_k(s.rows, analytics::Metric::Indemnity, 2);
        const bool top_ok = top.size() == 2 && top[0].group_key[0].second == "EL COLLAO" &&
                            top[1].group_key[0].second == "AZANGARO";
        const bool ok = s.rows.size() == 9 && matched == 9 && s.grand_total.total_insured_has == dec(14838) &&
                        s.grand_total.total_indemnity_soles == dec(5935200) && top_ok;
        return Outcome{ok, fmt("%zu/9 rows exact, totals %s/%s, top-2 %s", matched,
                               s.grand_total.total_insured_has.to_string().c_str(),
                               s.grand_total.total_indemnity_soles.to_string().c_str(),
                               top_ok ? "[EL COLLAO, AZANGARO]" : "wrong")};
    });

    criterion("rate-audit-400-vs-800", [] {
        std::string detail;
        bool ok = true;
        for (const char* name : {"puno_2010_2011_by_crop.csv", "puno_2011_by_province.csv"}) {
            const auto report = analytics::rate_audit(load(name).records, {dec(400), dec(800)});
            const auto n = report.record_count;
            ok = ok && report.per_rate[0].matched == n && report.per_rate[1].matched == 0 && n > 0;
            detail += fmt("%s 400: %zu/%zu, 800: %zu/%zu; ", name, report.per_rate[0].matched, n,
                          report.per_rate[1].matched, n);
        }
        return Outcome{ok, detail};
    });

    criterion("composite-w", [] {
        const double w = sarima::composite_w(0.8922, 0.9235);
        const double rounded = std::round(w * 1e7) / 1e7;
        return Outcome{std::abs(rounded - 0.8239467) < 1e-12, fmt("w = %.10f -> %.7f", w, rounded)};
    });

    criterion("chi-square-p-values", [] {
        const double cases[4][3] = {{11.63, 10, 0.311}, {26.15, 22, 0.245}, {36.32, 34, 0.361}, {47.47, 46, 0.413}};
        const auto start = Clock::now();
        double p[4];
        for (int i = 0; i < 4; ++i) p[i] = stats::chi_square_sf(cases[i][0], static_cast<int>(cases[i][1]));
        const double elapsed = ms_since(start);
        bool ok = elapsed < 10.0;
        std::string detail;
        for (int i = 0; i < 4; ++i) {
            ok = ok && std::abs(p[i] - cases[i][2]) <= 0.001;
            detail += fmt("(%.2f,%d)->%.4f ", cases[i][0], static_cast<int>(cases[i][1]), p[i]);
        }
        return Outcome{ok, detail + fmt("in %.3f ms (< 10)", elapsed)};
    });

    criterion("ljung-box-df", [] {
        const auto e = sarima::simulated_shocks(1.0, 200, 1);
        const auto rows = sarima::ljung_box(e, {12, 24, 36, 48}, 2);
        std::string detail = "df";
        bool ok = rows.size() == 4;
        const int expected[] = {10, 22, 34, 46};
        for (std::size_t i = 0; i < rows.size() && i < 4; ++i) {
            ok = ok && rows[i].df == expected[i];
            detail += " " + std::to_string(rows[i].df);
        }
        return Outcome{ok, detail};
    });

    criterion("t-ratios", [] {
        const double t1 = 0.8922 / 0.0235;
        const double t2 = 0.9235 / 0.0282;
        const bool ok = std::abs(t1 - 37.97) <= 0.01 && std::abs(t2 - 32.75) <= 0.01;
        return Outcome{ok, fmt("%.4f (37.97), %.4f (32.75); reported 37.92/32.70 use unrounded coefficients",
                               t1, t2)};
    });

    criterion("parameter-recovery", [] {
        const auto start = Clock::now();
        int recovered = 0;
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const auto f = sarima::fit(sarima::simulate(0.89, 0.92, 1.0, 12, 240, seed), sarima::SarimaSpec{});
            if (std::abs(f.theta - 0.89) <= 0.08 && std::abs(f.seasonal_theta - 0.92) <= 0.08) ++recovered;
        }
        const double elapsed = ms_since(start);
        return Outcome{recovered >= 90 && elapsed < 60000.0,
                       fmt("%d/100 within +-0.08 (>= 90) in %.0f ms (< 60000)", recovered, elapsed)};
    });

    criterion("ljung-box-size", [] {
        int rejections = 0;
        for (std::uint64_t seed = 1; seed <= 200; ++seed) {
            const auto e = sarima::simulated_shocks(1.0, 500, 10'000 + seed);
            if (sarima::ljung_box(e, {12}, 2)[0].p_value < 0.05) ++rejections;
        }
        const double rate = rejections / 200.0;
        return Outcome{rate >= 0.01 && rate <= 0.12, fmt("rejection rate %.3f in [0.01, 0.12]", rate)};
    });

    criterion("forecast-identities", [] {
        const auto y = sarima::simulate(0.6, 0.7, 1.0, 12, 180, 3);
        const auto naive = sarima::seasonal_naive_drift_forecast(y, 24);
        const auto zero_ma = sarima::forecast(y, fixed_fit(0.0, 0.0), 24);
        const bool naive_ok = naive.point_forecasts == zero_ma.point_forecasts;

        std::vector<double> periodic(60);
        for (std::size_t t = 0; t < periodic.size(); ++t) periodic[t] = 50.0 + static_cast<double>((t * 5) % 12);
        const auto cycle = sarima::forecast(sarima::TimeSeries(periodic), fixed_fit(0.89, 0.92), 12);
        double cycle_err = 0;
        for (std::size_t j = 0; j < 12; ++j) {
            cycle_err = std::max(cycle_err, std::abs(cycle.point_forecasts[j] - periodic[48 + j]));
        }

        const sarima::SarimaSpec spec;
        const auto pred = sarima::one_step_predictions(y, spec, 0.6, 0.7);
        const auto e = sarima::aligned_residuals(y, spec, 0.6, 0.7);
        double identity_err = 0;
        for (std::size_t t = 13; t < y.size(); ++t) {
            identity_err = std::max(identity_err, std::abs(y.values()[t] - (pred[t - 13] + e[t])));
        }
        const bool ok = naive_ok && cycle_err <= 1e-9 && identity_err <= 1e-9;
        return Outcome{ok, fmt("zero-MA == seasonal naive: %s; periodic max err %.2e; in-sample max err %.2e",
                               naive_ok ? "exact" : "differs", cycle_err, identity_err)};
    });

    criterion("gradient-check", [] {
        const auto w = sarima::difference(sarima::simulate(0.7, 0.6, 1.0, 12, 240, 77), 1, 1);
        testgen::Gen g(2024);
        double worst = 0;
        for (int i = 0; i < 20; ++i) {
            const double th = g.uniform(-0.9, 0.9), Th = g.uniform(-0.9, 0.9);
            const auto base = sarima::css_objective(w, th, Th, 12);
            const auto jac = sarima::residual_jacobian(w, th, Th, 12);
            const std::size_t m = base.residuals.size();
            double gn0 = 0, gn1 = 0;
            for (std::size_t t = 0; t < m; ++t) {
                gn0 += 2 * jac[t] * base.residuals[t];
                gn1 += 2 * jac[m + t] * base.residuals[t];
            }
            const double h = 1e-6;
            const double fd0 =
                (sarima::css_objective(w, th + h, Th, 12).css - sarima::css_objective(w, th - h, Th, 12).css) / (2 * h);
            const double fd1 =
                (sarima::css_objective(w, th, Th + h, 12).css - sarima::css_objective(w, th, Th - h, 12).css) / (2 * h);
            worst = std::max(worst, std::hypot(fd0 - gn0, fd1 - gn1) / std::hypot(gn0, gn1));
        }
        return Outcome{worst <= 1e-4, fmt("worst relative error %.2e over 20 points (<= 1e-4)", worst)};
    });

    criterion("csv-round-trip", [] {
        int ok_cases = 0;
        for (const char* name : {"puno_2010_2011_by_crop.csv", "puno_2011_by_province.csv"}) {
            const auto first = load(name);
            const auto second = ingest::parse_csv(ingest::export_csv(first.records));
            if (second.records == first.records && second.row_errors.empty()) ++ok_cases;
        }
        testgen::Gen g(4181);
        int quoted = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto records = g.records(static_cast<std::size_t>(g.integer(1, 25)));
            const auto text = ingest::export_csv(records);
            if (text.find('"') != std::string::npos) ++quoted;
            const auto back = ingest::parse_csv(text);
            if (back.records == records && back.row_errors.empty()) ++ok_cases;
        }
        return Outcome{ok_cases == 102 && quoted > 0,
                       fmt("%d/102 lossless (2 fixtures + 100 random, %d with quoted fields)", ok_cases, quoted)};
    });

    std::printf("%d criteria failed\n", failures);
    return failures;
}
