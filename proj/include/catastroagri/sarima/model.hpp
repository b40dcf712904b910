#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace catastroagri::sarima {

/// Ordered observations with one label per period.
class TimeSeries {
public:
    /// Labels default to "1".."n". Throws Error(DomainError) on mismatched
    /// lengths, non-finite values or seasonal_period < 1.
    explicit TimeSeries(std::vector<double> values, std::vector<std::string> labels = {},
                        int seasonal_period = 12);

    const std::vector<double>& values() const { return values_; }
    const std::vector<std::string>& labels() const { return labels_; }
    int seasonal_period() const { return seasonal_period_; }
    std::size_t size() const { return values_.size(); }

private:
    std::vector<double> values_;
    std::vector<std::string> labels_;
    int seasonal_period_;
};

/// ARIMA(0,d,1)(0,D,1)_s. Only the differencing orders and the period vary.
struct SarimaSpec {
    int d = 1;
    int seasonal_d = 1;
    int s = 12;
    /// Leave the first s + 1 residuals out of the objective. Off by default:
    /// plain conditional sum of squares over every residual.
    bool exclude_burn_in = false;

    /// Shortest series accepted for estimation: d + D·s + s + 2.
    std::size_t min_length() const;
    /// Throws Error(DomainError) for orders outside {0,1} or s < 1.
    void check() const;
};

/// (1−B)^d (1−B^s)^D applied to the series; length n − d − D·s.
/// Throws Error(SeriesTooShort) when nothing would remain.
std::vector<double> difference(std::span<const double> values, int d, int seasonal_d, int s);
std::vector<double> difference(const TimeSeries& series, int d, int seasonal_d);

struct CssResult {
    double css = 0.0;
    std::vector<double> residuals;
};

/// Conditional residuals e_t = w_t + θe_{t−1} + Θe_{t−s} − θΘe_{t−s−1} with
/// every pre-sample residual set to zero; css = Σe_t² over the residuals
/// returned. With `exclude_burn_in` the first s + 1 residuals are dropped
/// from both. Throws Error(NonInvertibleParams) unless |θ| < 1 and |Θ| < 1.
CssResult css_objective(std::span<const double> w, double theta, double seasonal_theta, int s,
                        bool exclude_burn_in = false);

struct SarimaFit {
    SarimaSpec spec;
    double theta = 0.0;
    double seasonal_theta = 0.0;
    double w = 0.0;  // θ·Θ, the implied lag s+1 coefficient
    double se_theta = 0.0;
    double se_seasonal_theta = 0.0;
    double t_theta = 0.0;
    double t_seasonal_theta = 0.0;
    double p_theta = 1.0;
    double p_seasonal_theta = 1.0;
    double sigma2 = 0.0;
    std::vector<double> residuals;
    double css = 0.0;
    std::size_t m = 0;
    int evaluations = 0;
};

/// Minimizes the CSS objective over (−1, 1)² with multi-start Nelder-Mead
/// and a quadratic barrier past |c| = 0.999. Standard errors come from the
/// Gauss-Newton covariance σ̂²(JᵀJ)⁻¹ with a central-difference residual
/// Jacobian; p-values are two-sided normal.
///
/// Throws Error(SeriesTooShort), Error(DegenerateSeries) for a constant
/// differenced series or singular information matrix, and
/// Error(NonConvergence) when the best start exhausts its budget.
SarimaFit fit(const TimeSeries& series, const SarimaSpec& spec);

/// Central-difference Jacobian of the residual vector in (θ, Θ); column
/// major: first m entries are ∂e/∂θ, next m are ∂e/∂Θ.
std::vector<double> residual_jacobian(std::span<const double> w, double theta, double seasonal_theta,
                                      int s, bool exclude_burn_in = false, double step = 1e-5);

constexpr double composite_w(double theta, double seasonal_theta) { return theta * seasonal_theta; }

struct LjungBoxRow {
    std::size_t lag = 0;
    double q = 0.0;
    int df = 0;
    double p_value = 1.0;
};

/// Q(K) = m(m+2) Σ_{k≤K} r_k²/(m−k) against χ²(K − fitted_params). Rows
/// come back in ascending lag order. Throws Error(LagTooLarge) when a lag is
/// 0 or not below m, Error(DomainError) when K − fitted_params < 1, and
/// propagates Error(DegenerateInput) from the autocorrelation.
std::vector<LjungBoxRow> ljung_box(std::span<const double> residuals, std::vector<std::size_t> lags,
                                   int fitted_params);

inline const std::vector<std::size_t> kDefaultLjungBoxLags = {12, 24, 36, 48};

struct DiagnosticsReport {
    double alpha = 0.05;
    std::vector<LjungBoxRow> ljung_box_rows;
    bool condition_invertible = false;
    bool condition_params_significant = false;
    bool condition_whiteness = false;
    bool verdict = false;
};

/// The three adequacy conditions on already-computed statistics. Whiteness
/// fails when no Ljung-Box row is supplied.
DiagnosticsReport assess(double theta, double seasonal_theta, double p_theta, double p_seasonal_theta,
                         std::vector<LjungBoxRow> ljung_box_rows, double alpha = 0.05);

/// Runs Ljung-Box on the fit's residuals at the requested lags (keeping only
/// those below the residual count and above the parameter count) and
/// assesses the fit.
DiagnosticsReport validate(const SarimaFit& fit, double alpha = 0.05,
                           const std::vector<std::size_t>& lags = kDefaultLjungBoxLags);

enum class ForecastMethod { Sarima, LinearTrend, SeasonalNaiveDrift };

std::string_view to_string(ForecastMethod method) noexcept;

struct ForecastResult {
    std::size_t origin = 0;  // number of observations the forecast starts after
    std::size_t horizon = 0;
    std::vector<double> point_forecasts;
    ForecastMethod method = ForecastMethod::Sarima;
};

/// Residuals aligned with the original series: zero for the first d + D·s
/// periods, conditional residuals afterwards.
std::vector<double> aligned_residuals(const TimeSeries& series, const SarimaSpec& spec, double theta,
                                      double seasonal_theta);

/// In-sample one-step predictions Y_t − e_t for t = d + D·s .. n−1 from the
/// model recursion.
std::vector<double> one_step_predictions(const TimeSeries& series, const SarimaSpec& spec,
                                         double theta, double seasonal_theta);

/// Point forecasts from the model recursion, with observed values and
/// residuals inside the sample and forecasts with zero residuals beyond it.
/// Throws Error(HorizonInvalid) for h < 1.
ForecastResult forecast(const TimeSeries& series, const SarimaFit& fit, int h);

/// Ŷ_t = Y_{t−1} + Y_{t−s} − Y_{t−s−1} iterated forward.
ForecastResult seasonal_naive_drift_forecast(const TimeSeries& series, int h);

/// Straight line through (t, Y_t), t = 1..n, extended h steps.
/// Throws Error(HorizonInvalid) or Error(DegenerateInput).
ForecastResult linear_trend_forecast(const TimeSeries& series, int h);

/// Simulated ARIMA(0,1,1)(0,1,1)_s path: Gaussian shocks from a seeded
/// generator, MA filter, then ordinary and seasonal integration from zero.
/// The first s + 1 values are the zero initial state, so differencing the
/// result yields the MA-filtered shocks exactly and the CSS residuals at the
/// true parameters are the shocks from index s + 1 onward. σ = 0 gives the
/// zero series. Throws Error(NonInvertibleParams) or Error(DomainError) for σ < 0 or n ≤ s + 2.
TimeSeries simulate(double theta, double seasonal_theta, double sigma, int s, std::size_t n,
                    std::uint64_t seed);

/// Raw draws behind simulate() for the same arguments, in time order;
/// simulate() uses entries from index s + 1.
std::vector<double> simulated_shocks(double sigma, std::size_t n, std::uint64_t seed);

struct QqPoint {
    double theoretical = 0.0;
    double observed = 0.0;
};

/// Normal probability plot pairs with Blom positions (i − 0.375)/(m + 0.25).
/// Throws Error(TooFewPoints) for fewer than three residuals.
std::vector<QqPoint> qq_data(std::span<const double> residuals);

}  // namespace catastroagri::sarima
