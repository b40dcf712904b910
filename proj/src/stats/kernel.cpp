#include "catastroagri/stats/kernel.hpp"

#include "catastroagri/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace catastroagri::stats {

namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 100000;

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Σ xⁿ/(a(a+1)…(a+n)) · xᵃe⁻ˣ/Γ(a)
double lower_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double upper_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || !std::isfinite(a)) {
        throw Error(ErrorCode::DomainError, "incomplete gamma needs a > 0 and x ≥ 0");
    }
}

void check_chi_args(double x, int df) {
    if (!(x >= 0.0)) throw Error(ErrorCode::DomainError, "chi-square statistic must be ≥ 0");
    if (df < 1) throw Error(ErrorCode::DomainError, "chi-square degrees of freedom must be ≥ 1");
}

}  // namespace

AcfResult acf(std::span<const double> series, std::size_t max_lag) {
    const std::size_t m = series.size();
    if (max_lag == 0 || m <= max_lag) {
        throw Error(ErrorCode::DegenerateInput, "acf needs more than " + std::to_string(max_lag) +
                                                    " observations, got " + std::to_string(m));
    }
    const double mean = mean_of(series);
    double denom = 0.0;
    for (double v : series) denom += (v - mean) * (v - mean);
    if (!(denom > 0.0)) throw Error(ErrorCode::DegenerateInput, "acf of a constant series is undefined");

    AcfResult result;
    result.series_length = m;
    result.coefficients.reserve(max_lag);
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + k < m; ++t) num += (series[t] - mean) * (series[t + k] - mean);
        result.coefficients.push_back(num / denom);
    }
    return result;
}

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return lower_series(a, x);
    return 1.0 - upper_fraction(a, x);
}

double gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    return upper_fraction(a, x);
}

double chi_square_sf(double x, int df) {
    check_chi_args(x, df);
    return gamma_q(0.5 * df, 0.5 * x);
}

double chi_square_cdf(double x, int df) {
    check_chi_args(x, df);
    return gamma_p(0.5 * df, 0.5 * x);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::DomainError, "normal quantile needs 0 < p < 1");
    if (p == 0.5) return 0.0;

    // Acklam's rational approximation (relative error ≈ 1.15e-9).
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double z;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement against the erfc-based CDF. Working in the nearer
    // tail keeps the residual free of cancellation.
    const double density = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    const double e = (p < 0.5) ? normal_cdf(z) - p : (1.0 - p) - normal_sf(z);
    const double u = e / density;
    z -= u / (1.0 + 0.5 * z * u);
    return z;
}

OlsFit ols_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::DegenerateInput, "x and y lengths differ");
    if (x.size() < 2) throw Error(ErrorCode::DegenerateInput, "regression needs at least two points");

    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw Error(ErrorCode::DegenerateInput, "regression on a constant x");

    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.residuals.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        fit.residuals.push_back(y[i] - fit.intercept - fit.slope * x[i]);
    }
    return fit;
}

}  // namespace catastroagri::stats
