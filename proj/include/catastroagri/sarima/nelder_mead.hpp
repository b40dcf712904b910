#pragma once

#include <functional>
#include <span>
#include <vector>

namespace catastroagri::sarima {

struct NelderMeadOptions {
    double value_tolerance = 1e-10;  // relative spread of objective values on the simplex
    double size_tolerance = 1e-8;    // largest vertex distance from the best vertex
    int max_evaluations = 10'000;
    double initial_step = 0.1;
};

struct NelderMeadResult {
    std::vector<double> point;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Unconstrained Nelder-Mead simplex search with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Stops when both
/// tolerances hold or the evaluation budget is spent; `converged` tells
/// which.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace catastroagri::sarima
