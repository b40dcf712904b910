#include "catastroagri/analytics/series.hpp"

#include "catastroagri/error.hpp"

#include <algorithm>
#include <map>

namespace catastroagri::analytics {

sarima::TimeSeries build_series(const std::vector<model::InsuranceRecord>& records,
                                const SeriesSpec& spec, int seasonal_period) {
    std::optional<Dimension> by;
    bool record_order = false;
    if (spec.period_column) {
        if (match_key(*spec.period_column) == "ORDER") {
            record_order = true;
        } else {
            by = parse_dimension(*spec.period_column);
        }
    }

    std::vector<std::string> labels;
    std::vector<Decimal> sums;
    std::map<std::string, std::size_t> slot_of;  // match key → period index
    for (const auto& record : records) {
        const bool keep = std::all_of(spec.filters.begin(), spec.filters.end(),
                                      [&](const Filter& f) { return f.accepts(record); });
        if (!keep) continue;

        SummaryRow one;
        one.total_sown_has = record.sown_area_has;
        one.total_insured_has = record.insured_area_has;
        one.total_indemnity_soles = record.indemnity_amount_soles;
        one.total_producers = record.producers_benefited;
        const Decimal value = one.metric(spec.metric);

        if (record_order) {
            labels.push_back(std::to_string(labels.size() + 1));
            sums.push_back(value);
            continue;
        }
        const std::string& label = field_of(record, by.value_or(Dimension::Campaign));
        const auto [it, inserted] = slot_of.try_emplace(match_key(label), sums.size());
        if (inserted) {
            labels.emplace_back(model::trim(label));
            sums.push_back(value);
        } else {
            sums[it->second] += value;
        }
    }
    if (sums.empty()) throw Error(ErrorCode::SeriesTooShort, "no records match the series filters");

    std::vector<std::size_t> order(sums.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (!spec.period_column) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return model::campaign_less(labels[a], labels[b]);
        });
    }

    std::vector<double> values;
    std::vector<std::string> ordered_labels;
    for (std::size_t i : order) {
        values.push_back(sums[i].to_double());
        ordered_labels.push_back(labels[i]);
    }
    return sarima::TimeSeries(std::move(values), std::move(ordered_labels), seasonal_period);
}

}  // namespace catastroagri::analytics
