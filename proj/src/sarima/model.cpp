#include "catastroagri/sarima/model.hpp"

#include "catastroagri/error.hpp"
#include "catastroagri/sarima/nelder_mead.hpp"
#include "catastroagri/stats/kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace catastroagri::sarima {

namespace {

constexpr double kBoundary = 0.999;
constexpr double kBarrierWeight = 1e6;

void check_invertible(double theta, double seasonal_theta) {
    if (!(std::abs(theta) < 1.0) || !(std::abs(seasonal_theta) < 1.0)) {
        throw Error(ErrorCode::NonInvertibleParams, "MA coefficients must satisfy |θ| < 1 and |Θ| < 1");
    }
}

void check_horizon(int h) {
    if (h < 1) throw Error(ErrorCode::HorizonInvalid, "forecast horizon must be ≥ 1");
}

// Coefficients c_0..c_L of (1−B)^d (1−B^s)^D, c_0 = 1.
std::vector<double> differencing_polynomial(int d, int seasonal_d, int s) {
    std::vector<double> poly{1.0};
    auto multiply = [&](std::size_t lag) {
        std::vector<double> out(poly.size() + lag, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            out[i] += poly[i];
            out[i + lag] -= poly[i];
        }
        poly = std::move(out);
    };
    for (int i = 0; i < d; ++i) multiply(1);
    for (int i = 0; i < seasonal_d; ++i) multiply(static_cast<std::size_t>(s));
    return poly;
}

// Ŷ_t = −Σ_{j≥1} c_j Y_{t−j} − θe_{t−1} − Θe_{t−s} + θΘe_{t−s−1}, indices
// below zero contribute nothing.
double model_prediction(const std::vector<double>& y, const std::vector<double>& e,
                        const std::vector<double>& poly, std::size_t t, double theta,
                        double seasonal_theta, int s) {
    double pred = 0.0;
    for (std::size_t j = 1; j < poly.size() && j <= t; ++j) pred -= poly[j] * y[t - j];
    const auto su = static_cast<std::size_t>(s);
    if (t >= 1) pred -= theta * e[t - 1];
    if (t >= su) pred -= seasonal_theta * e[t - su];
    if (t >= su + 1) pred += theta * seasonal_theta * e[t - su - 1];
    return pred;
}

double variance(std::span<const double> v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size());
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> values, std::vector<std::string> labels, int seasonal_period)
    : values_(std::move(values)), labels_(std::move(labels)), seasonal_period_(seasonal_period) {
    if (seasonal_period_ < 1) throw Error(ErrorCode::DomainError, "seasonal period must be ≥ 1");
    if (labels_.empty()) {
        labels_.reserve(values_.size());
        for (std::size_t i = 0; i < values_.size(); ++i) labels_.push_back(std::to_string(i + 1));
    }
    if (labels_.size() != values_.size()) {
        throw Error(ErrorCode::DomainError, "time series needs one label per value");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error(ErrorCode::DomainError, "time series values must be finite");
    }
}

std::size_t SarimaSpec::min_length() const {
    return static_cast<std::size_t>(d + seasonal_d * s + s + 2);
}

void SarimaSpec::check() const {
    if (d < 0 || d > 1 || seasonal_d < 0 || seasonal_d > 1) {
        throw Error(ErrorCode::DomainError, "differencing orders must be 0 or 1");
    }
    if (s < 1) throw Error(ErrorCode::DomainError, "seasonal period must be ≥ 1");
}

std::vector<double> difference(std::span<const double> values, int d, int seasonal_d, int s) {
    SarimaSpec{d, seasonal_d, s}.check();
    const auto lost = static_cast<std::size_t>(d + seasonal_d * s);
    if (values.size() <= lost) {
        throw Error(ErrorCode::SeriesTooShort, "series of length " + std::to_string(values.size()) +
                                                   " is too short to difference away " +
                                                   std::to_string(lost) + " periods");
    }
    std::vector<double> w(values.begin(), values.end());
    auto apply = [&](std::size_t lag) {
        std::vector<double> out(w.size() - lag);
        for (std::size_t t = lag; t < w.size(); ++t) out[t - lag] = w[t] - w[t - lag];
        w = std::move(out);
    };
    for (int i = 0; i < d; ++i) apply(1);
    for (int i = 0; i < seasonal_d; ++i) apply(static_cast<std::size_t>(s));
    return w;
}

std::vector<double> difference(const TimeSeries& series, int d, int seasonal_d) {
    return difference(series.values(), d, seasonal_d, series.seasonal_period());
}

CssResult css_objective(std::span<const double> w, double theta, double seasonal_theta, int s,
                        bool exclude_burn_in) {
    check_invertible(theta, seasonal_theta);
    if (s < 1) throw Error(ErrorCode::DomainError, "seasonal period must be ≥ 1");
    const auto su = static_cast<std::size_t>(s);
    const double cross = theta * seasonal_theta;

    std::vector<double> e(w.size());
    for (std::size_t t = 0; t < w.size(); ++t) {
        double v = w[t];
        if (t >= 1) v += theta * e[t - 1];
        if (t >= su) v += seasonal_theta * e[t - su];
        if (t >= su + 1) v -= cross * e[t - su - 1];
        e[t] = v;
    }

    CssResult result;
    if (exclude_burn_in) {
        const std::size_t skip = std::min(e.size(), su + 1);
        result.residuals.assign(e.begin() + static_cast<std::ptrdiff_t>(skip), e.end());
    } else {
        result.residuals = std::move(e);
    }
    for (double v : result.residuals) result.css += v * v;
    return result;
}

std::vector<double> residual_jacobian(std::span<const double> w, double theta, double seasonal_theta,
                                      int s, bool exclude_burn_in, double step) {
    const auto plus_t = css_objective(w, theta + step, seasonal_theta, s, exclude_burn_in).residuals;
    const auto minus_t = css_objective(w, theta - step, seasonal_theta, s, exclude_burn_in).residuals;
    const auto plus_s = css_objective(w, theta, seasonal_theta + step, s, exclude_burn_in).residuals;
    const auto minus_s = css_objective(w, theta, seasonal_theta - step, s, exclude_burn_in).residuals;
    const std::size_t m = plus_t.size();
    std::vector<double> jac(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        jac[i] = (plus_t[i] - minus_t[i]) / (2.0 * step);
        jac[m + i] = (plus_s[i] - minus_s[i]) / (2.0 * step);
    }
    return jac;
}

SarimaFit fit(const TimeSeries& series, const SarimaSpec& spec) {
    spec.check();
    if (series.size() < spec.min_length()) {
        throw Error(ErrorCode::SeriesTooShort,
                    "series too short: need at least " + std::to_string(spec.min_length()) +
                        " observations for s = " + std::to_string(spec.s) + ", got " +
                        std::to_string(series.size()));
    }
    const std::vector<double> w = difference(series.values(), spec.d, spec.seasonal_d, spec.s);
    if (!(variance(w) > 0.0)) {
        throw Error(ErrorCode::DegenerateSeries, "differenced series is constant");
    }

    auto penalized = [&](std::span<const double> x) {
        double penalty = 0.0;
        std::array<double, 2> c{};
        for (std::size_t i = 0; i < 2; ++i) {
            const double excess = std::abs(x[i]) - kBoundary;
            if (excess > 0.0) penalty += kBarrierWeight * excess * excess;
            c[i] = std::clamp(x[i], -kBoundary, kBoundary);
        }
        return css_objective(w, c[0], c[1], spec.s, spec.exclude_burn_in).css + penalty;
    };

    NelderMeadResult best;
    best.value = HUGE_VAL;
    int evaluations = 0;
    for (double t0 : {-0.5, 0.0, 0.5}) {
        for (double s0 : {-0.5, 0.0, 0.5}) {
            auto run = nelder_mead(penalized, {t0, s0});
            evaluations += run.evaluations;
            if (run.value < best.value) best = std::move(run);
        }
    }
    if (!best.converged) {
        throw Error(ErrorCode::NonConvergence,
                    "optimizer did not converge within " + std::to_string(NelderMeadOptions{}.max_evaluations) +
                        " evaluations");
    }

    SarimaFit out;
    out.spec = spec;
    out.evaluations = evaluations;
    out.theta = std::clamp(best.point[0], -kBoundary, kBoundary);
    out.seasonal_theta = std::clamp(best.point[1], -kBoundary, kBoundary);
    out.w = composite_w(out.theta, out.seasonal_theta);

    auto css = css_objective(w, out.theta, out.seasonal_theta, spec.s, spec.exclude_burn_in);
    out.residuals = std::move(css.residuals);
    out.css = css.css;
    out.m = out.residuals.size();
    if (out.m <= 2) throw Error(ErrorCode::SeriesTooShort, "too few residuals to estimate variance");
    out.sigma2 = out.css / static_cast<double>(out.m - 2);

    const auto jac = residual_jacobian(w, out.theta, out.seasonal_theta, spec.s, spec.exclude_burn_in);
    double a = 0.0, b = 0.0, c = 0.0;  // JᵀJ = [[a, b], [b, c]]
    for (std::size_t i = 0; i < out.m; ++i) {
        a += jac[i] * jac[i];
        b += jac[i] * jac[out.m + i];
        c += jac[out.m + i] * jac[out.m + i];
    }
    const double det = a * c - b * b;
    if (!(det > 0.0) || !std::isfinite(det)) {
        throw Error(ErrorCode::DegenerateSeries, "information matrix is singular");
    }
    out.se_theta = std::sqrt(out.sigma2 * c / det);
    out.se_seasonal_theta = std::sqrt(out.sigma2 * a / det);
    if (!(out.se_theta > 0.0) || !(out.se_seasonal_theta > 0.0)) {
        throw Error(ErrorCode::DegenerateSeries, "standard errors vanish: residuals are exactly zero");
    }
    out.t_theta = out.theta / out.se_theta;
    out.t_seasonal_theta = out.seasonal_theta / out.se_seasonal_theta;
    out.p_theta = 2.0 * stats::normal_sf(std::abs(out.t_theta));
    out.p_seasonal_theta = 2.0 * stats::normal_sf(std::abs(out.t_seasonal_theta));
    return out;
}

std::vector<LjungBoxRow> ljung_box(std::span<const double> residuals, std::vector<std::size_t> lags,
                                   int fitted_params) {
    std::sort(lags.begin(), lags.end());
    lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
    const std::size_t m = residuals.size();
    for (std::size_t k : lags) {
        if (k == 0 || k >= m) {
            throw Error(ErrorCode::LagTooLarge, "lag " + std::to_string(k) + " is invalid for " +
                                                    std::to_string(m) + " residuals");
        }
        if (static_cast<long>(k) - fitted_params < 1) {
            throw Error(ErrorCode::DomainError, "lag " + std::to_string(k) +
                                                    " leaves no degrees of freedom after " +
                                                    std::to_string(fitted_params) + " parameters");
        }
    }
    if (lags.empty()) return {};

    const auto r = stats::acf(residuals, lags.back());
    const double md = static_cast<double>(m);
    std::vector<LjungBoxRow> rows;
    double sum = 0.0;
    std::size_t k = 0;
    for (std::size_t lag : lags) {
        for (; k < lag; ++k) {
            const double rk = r.coefficients[k];
            sum += rk * rk / (md - static_cast<double>(k + 1));
        }
        LjungBoxRow row;
        row.lag = lag;
        row.q = md * (md + 2.0) * sum;
        row.df = static_cast<int>(lag) - fitted_params;
        row.p_value = stats::chi_square_sf(row.q, row.df);
        rows.push_back(row);
    }
    return rows;
}

DiagnosticsReport assess(double theta, double seasonal_theta, double p_theta, double p_seasonal_theta,
                         std::vector<LjungBoxRow> ljung_box_rows, double alpha) {
    DiagnosticsReport report;
    report.alpha = alpha;
    report.condition_invertible = std::abs(theta) < 1.0 && std::abs(seasonal_theta) < 1.0;
    report.condition_params_significant = p_theta < alpha && p_seasonal_theta < alpha;
    report.condition_whiteness =
        !ljung_box_rows.empty() &&
        std::all_of(ljung_box_rows.begin(), ljung_box_rows.end(),
                    [&](const LjungBoxRow& row) { return row.p_value > alpha; });
    report.ljung_box_rows = std::move(ljung_box_rows);
    report.verdict = report.condition_invertible && report.condition_params_significant &&
                     report.condition_whiteness;
    return report;
}

DiagnosticsReport validate(const SarimaFit& fit, double alpha, const std::vector<std::size_t>& lags) {
    constexpr int kFittedParams = 2;
    std::vector<std::size_t> usable;
    for (std::size_t k : lags) {
        if (k < fit.residuals.size() && static_cast<long>(k) > kFittedParams) usable.push_back(k);
    }
    std::vector<LjungBoxRow> rows;
    if (!usable.empty()) rows = ljung_box(fit.residuals, usable, kFittedParams);
    return assess(fit.theta, fit.seasonal_theta, fit.p_theta, fit.p_seasonal_theta, std::move(rows), alpha);
}

std::string_view to_string(ForecastMethod method) noexcept {
    switch (method) {
        case ForecastMethod::Sarima: return "sarima";
        case ForecastMethod::LinearTrend: return "linear";
        case ForecastMethod::SeasonalNaiveDrift: return "seasonal_naive_drift";
    }
    return "";
}

std::vector<double> aligned_residuals(const TimeSeries& series, const SarimaSpec& spec, double theta,
                                      double seasonal_theta) {
    spec.check();
    const auto offset = static_cast<std::size_t>(spec.d + spec.seasonal_d * spec.s);
    const auto w = difference(series.values(), spec.d, spec.seasonal_d, spec.s);
    const auto css = css_objective(w, theta, seasonal_theta, spec.s, false);
    std::vector<double> e(series.size(), 0.0);
    std::copy(css.residuals.begin(), css.residuals.end(), e.begin() + static_cast<std::ptrdiff_t>(offset));
    return e;
}

std::vector<double> one_step_predictions(const TimeSeries& series, const SarimaSpec& spec,
                                         double theta, double seasonal_theta) {
    const auto e = aligned_residuals(series, spec, theta, seasonal_theta);
    const auto poly = differencing_polynomial(spec.d, spec.seasonal_d, spec.s);
    const auto& y = series.values();
    std::vector<double> preds;
    for (std::size_t t = poly.size() - 1; t < y.size(); ++t) {
        preds.push_back(model_prediction(y, e, poly, t, theta, seasonal_theta, spec.s));
    }
    return preds;
}

ForecastResult forecast(const TimeSeries& series, const SarimaFit& fit, int h) {
    check_horizon(h);
    const auto& spec = fit.spec;
    std::vector<double> e = aligned_residuals(series, spec, fit.theta, fit.seasonal_theta);
    const auto poly = differencing_polynomial(spec.d, spec.seasonal_d, spec.s);
    std::vector<double> y = series.values();
    const std::size_t n = y.size();

    ForecastResult result;
    result.origin = n;
    result.horizon = static_cast<std::size_t>(h);
    result.method = ForecastMethod::Sarima;
    for (int j = 0; j < h; ++j) {
        const std::size_t t = n + static_cast<std::size_t>(j);
        const double pred = model_prediction(y, e, poly, t, fit.theta, fit.seasonal_theta, spec.s);
        y.push_back(pred);
        e.push_back(0.0);
        result.point_forecasts.push_back(pred);
    }
    return result;
}

ForecastResult seasonal_naive_drift_forecast(const TimeSeries& series, int h) {
    SarimaFit zero;
    zero.spec = SarimaSpec{1, 1, series.seasonal_period()};
    if (series.size() <= static_cast<std::size_t>(series.seasonal_period()) + 1) {
        throw Error(ErrorCode::SeriesTooShort, "seasonal naive forecast needs more than s + 1 observations");
    }
    auto result = forecast(series, zero, h);
    result.method = ForecastMethod::SeasonalNaiveDrift;
    return result;
}

ForecastResult linear_trend_forecast(const TimeSeries& series, int h) {
    check_horizon(h);
    const std::size_t n = series.size();
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i + 1);
    const auto line = stats::ols_fit(t, series.values());

    ForecastResult result;
    result.origin = n;
    result.horizon = static_cast<std::size_t>(h);
    result.method = ForecastMethod::LinearTrend;
    for (int j = 1; j <= h; ++j) {
        result.point_forecasts.push_back(line.intercept + line.slope * static_cast<double>(n + j));
    }
    return result;
}

std::vector<double> simulated_shocks(double sigma, std::size_t n, std::uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::DomainError, "σ must be ≥ 0");
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> e(n);
    for (auto& v : e) v = sigma * normal(engine);
    return e;
}

TimeSeries simulate(double theta, double seasonal_theta, double sigma, int s, std::size_t n,
                    std::uint64_t seed) {
    check_invertible(theta, seasonal_theta);
    if (s < 1) throw Error(ErrorCode::DomainError, "seasonal period must be ≥ 1");
    const auto su = static_cast<std::size_t>(s);
    if (n <= su + 2) throw Error(ErrorCode::DomainError, "simulation length must exceed s + 2");

    // The process is at rest for the first s + 1 periods, the ones lost to
    // differencing, so difference() returns w from its first shock onward.
    auto e = simulated_shocks(sigma, n, seed);
    std::fill(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(su + 1), 0.0);
    std::vector<double> y(n, 0.0);
    double level = 0.0;  // running first-order integral
    for (std::size_t t = 0; t < n; ++t) {
        double w = e[t];
        if (t >= 1) w -= theta * e[t - 1];
        if (t >= su) w -= seasonal_theta * e[t - su];
        if (t >= su + 1) w += theta * seasonal_theta * e[t - su - 1];
        level += w;
        y[t] = level + (t >= su ? y[t - su] : 0.0);
    }
    return TimeSeries(std::move(y), {}, s);
}

std::vector<QqPoint> qq_data(std::span<const double> residuals) {
    const std::size_t m = residuals.size();
    if (m < 3) throw Error(ErrorCode::TooFewPoints, "probability plot needs at least three residuals");
    std::vector<double> sorted(residuals.begin(), residuals.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<QqPoint> points;
    points.reserve(m);
    const double md = static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double rank = static_cast<double>(i + 1);
        const double position = (rank - 0.375) / (md + 0.25);
        // The middle rank of an odd sample sits exactly on the median.
        const double q = (2 * (i + 1) == m + 1) ? 0.0 : stats::normal_quantile(position);
        points.push_back({q, sorted[i]});
    }
    return points;
}

}  // namespace catastroagri::sarima
