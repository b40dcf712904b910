#pragma once

#include "catastroagri/analytics/summary.hpp"
#include "catastroagri/sarima/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace catastroagri::analytics {

/// How records are turned into periods.
///  - nullopt: one period per campaign, ascending by campaign start year.
///  - "order": one period per record, in dataset order.
///  - a dimension name: one period per distinct value, in order of first
///    appearance in the dataset.
struct SeriesSpec {
    Metric metric = Metric::Insured;
    std::vector<Filter> filters;
    std::optional<std::string> period_column;
};

/// Sums the metric per period over the filtered records. Throws
/// Error(BadDimension) for an unknown period column and
/// Error(SeriesTooShort) when no record passes the filters.
sarima::TimeSeries build_series(const std::vector<model::InsuranceRecord>& records,
                                const SeriesSpec& spec, int seasonal_period = 12);

}  // namespace catastroagri::analytics
