#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace catastroagri::stats {

struct AcfResult {
    std::vector<double> coefficients;  // coefficients[k-1] is r_k, k = 1..max_lag
    std::size_t series_length = 0;

    std::size_t max_lag() const { return coefficients.size(); }
    double at(std::size_t lag) const { return coefficients.at(lag - 1); }
};

/// Mean-corrected sample autocorrelations with the lag-0 sum of squares as
/// the common denominator. Throws Error(DegenerateInput) for a constant
/// series, max_lag = 0, or a series no longer than max_lag.
AcfResult acf(std::span<const double> series, std::size_t max_lag);

/// Regularized lower/upper incomplete gamma P(a, x), Q(a, x) for a > 0,
/// x ≥ 0. Series for x < a + 1, continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// P(χ²_df > x). Throws Error(DomainError) for x < 0 or df < 1.
double chi_square_sf(double x, int df);
double chi_square_cdf(double x, int df);

double normal_cdf(double z);
/// P(Z > z), computed from erfc so the far tail keeps relative precision.
double normal_sf(double z);

/// Φ⁻¹(p): rational initial approximation polished by a Halley step.
/// Throws Error(DomainError) unless 0 < p < 1.
double normal_quantile(double p);

struct OlsFit {
    double intercept = 0.0;
    double slope = 0.0;
    std::vector<double> residuals;
};

/// Least-squares line y ≈ a + b·x. Throws Error(DegenerateInput) when the
/// lengths differ, fewer than two points are given, or x is constant.
OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

}  // namespace catastroagri::stats
