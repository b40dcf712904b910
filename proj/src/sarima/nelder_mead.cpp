#include "catastroagri/sarima/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace catastroagri::sarima {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    NelderMeadResult result;

    auto eval = [&](const std::vector<double>& x) {
        ++result.evaluations;
        const double v = objective(x);
        return std::isfinite(v) ? v : HUGE_VAL;
    };

    std::vector<std::vector<double>> simplex(dim + 1, start);
    for (std::size_t i = 0; i < dim; ++i) {
        const double step = start[i] != 0.0 ? options.initial_step * std::max(1.0, std::abs(start[i]))
                                            : options.initial_step;
        simplex[i + 1][i] += step;
    }
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    std::vector<double> centroid(dim), trial(dim), trial2(dim);

    auto along = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
        for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (worst[j] - centroid[j]);
    };

    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[dim - 1];

        double size = 0.0;
        for (std::size_t i = 0; i <= dim; ++i) {
            double dist2 = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                const double diff = simplex[i][j] - simplex[best][j];
                dist2 += diff * diff;
            }
            size = std::max(size, std::sqrt(dist2));
        }
        const double spread = values[worst] - values[best];
        const double scale = std::abs(values[best]) + std::numeric_limits<double>::min();
        if (spread <= options.value_tolerance * scale && size < options.size_tolerance) {
            result.converged = true;
            break;
        }
        if (result.evaluations >= options.max_evaluations) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j] / static_cast<double>(dim);
        }

        along(-1.0, trial, simplex[worst]);
        const double reflected = eval(trial);
        if (reflected < values[best]) {
            along(-2.0, trial2, simplex[worst]);
            const double expanded = eval(trial2);
            if (expanded < reflected) {
                simplex[worst] = trial2;
                values[worst] = expanded;
            } else {
                simplex[worst] = trial;
                values[worst] = reflected;
            }
            continue;
        }
        if (reflected < values[second_worst]) {
            simplex[worst] = trial;
            values[worst] = reflected;
            continue;
        }

        // Outside contraction when the reflection beat the worst vertex,
        // inside contraction otherwise.
        const bool outside = reflected < values[worst];
        along(outside ? -0.5 : 0.5, trial2, simplex[worst]);
        const double contracted = eval(trial2);
        if (contracted < (outside ? reflected : values[worst])) {
            simplex[worst] = trial2;
            values[worst] = contracted;
            continue;
        }

        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == best) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.point = simplex[best];
    result.value = values[best];
    return result;
}

}  // namespace catastroagri::sarima
