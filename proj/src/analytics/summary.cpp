#include "catastroagri/analytics/summary.hpp"

#include "catastroagri/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace catastroagri::analytics {

namespace {

std::string lower_ascii(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::vector<std::string> group_match_key(const SummaryRow& row) {
    std::vector<std::string> key;
    key.reserve(row.group_key.size());
    for (const auto& [dim, value] : row.group_key) key.push_back(match_key(value));
    return key;
}

void add_record(SummaryRow& row, const model::InsuranceRecord& r) {
    row.total_sown_has += r.sown_area_has;
    row.total_insured_has += r.insured_area_has;
    row.total_indemnity_soles += r.indemnity_amount_soles;
    row.total_producers += r.producers_benefited;
    row.record_count += 1;
}

std::string_view column_name(Dimension d) {
    switch (d) {
        case Dimension::Campaign: return "YEAR";
        case Dimension::Province: return "PROVINCE";
        case Dimension::District: return "DISTRICT";
        case Dimension::Sector: return "SECTOR_EST";
        case Dimension::Crop: return "NOM_CROP";
    }
    return "";
}

}  // namespace

std::string_view to_string(Dimension d) noexcept {
    switch (d) {
        case Dimension::Campaign: return "campaign";
        case Dimension::Province: return "province";
        case Dimension::District: return "district";
        case Dimension::Sector: return "sector";
        case Dimension::Crop: return "crop";
    }
    return "";
}

Dimension parse_dimension(std::string_view name) {
    const std::string n = lower_ascii(model::trim(name));
    if (n == "campaign" || n == "year") return Dimension::Campaign;
    if (n == "province") return Dimension::Province;
    if (n == "district") return Dimension::District;
    if (n == "sector") return Dimension::Sector;
    if (n == "crop") return Dimension::Crop;
    throw Error(ErrorCode::BadDimension, "unknown dimension '" + std::string(name) + "'");
}

std::vector<Dimension> parse_dimensions(std::string_view list) {
    std::vector<Dimension> dims;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const auto item = list.substr(start, comma == std::string_view::npos ? list.npos : comma - start);
        const Dimension d = parse_dimension(item);
        if (std::find(dims.begin(), dims.end(), d) != dims.end()) {
            throw Error(ErrorCode::DuplicateDimension,
                        "dimension '" + std::string(to_string(d)) + "' listed twice");
        }
        dims.push_back(d);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return dims;
}

const std::string& field_of(const model::InsuranceRecord& record, Dimension d) {
    switch (d) {
        case Dimension::Campaign: return record.campaign_year;
        case Dimension::Province: return record.province;
        case Dimension::District: return record.district;
        case Dimension::Sector: return record.statistical_sector;
        case Dimension::Crop: return record.crop_name;
    }
    return record.crop_name;
}

std::string match_key(std::string_view value) {
    std::string out(model::trim(value));
    for (char& c : out) {
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return out;
}

std::string_view to_string(Metric m) noexcept {
    switch (m) {
        case Metric::Sown: return "sown";
        case Metric::Insured: return "insured";
        case Metric::Indemnity: return "indemnity";
        case Metric::Producers: return "producers";
    }
    return "";
}

Metric parse_metric(std::string_view name) {
    const std::string n = lower_ascii(model::trim(name));
    if (n == "sown") return Metric::Sown;
    if (n == "insured") return Metric::Insured;
    if (n == "indemnity") return Metric::Indemnity;
    if (n == "producers") return Metric::Producers;
    throw Error(ErrorCode::BadMetric, "unknown metric '" + std::string(name) +
                                          "' (expected sown, insured, indemnity or producers)");
}

Filter Filter::make(Dimension dimension, const std::vector<std::string>& values) {
    if (values.empty()) throw Error(ErrorCode::BadRequest, "filter needs at least one value");
    Filter f{dimension, {}};
    for (const auto& v : values) f.accepted_values.insert(match_key(v));
    return f;
}

bool Filter::accepts(const model::InsuranceRecord& record) const {
    return accepted_values.contains(match_key(field_of(record, dimension)));
}

std::vector<Filter> parse_filters(const std::vector<std::string>& items) {
    std::map<Dimension, std::vector<std::string>> grouped;
    for (const auto& item : items) {
        const auto sep = item.find_first_of(":=");
        if (sep == std::string::npos) {
            throw Error(ErrorCode::BadRequest, "filter '" + item + "' must look like dimension:value");
        }
        grouped[parse_dimension(item.substr(0, sep))].push_back(item.substr(sep + 1));
    }
    std::vector<Filter> filters;
    for (const auto& [dim, values] : grouped) filters.push_back(Filter::make(dim, values));
    return filters;
}

Decimal SummaryRow::metric(Metric m) const {
    switch (m) {
        case Metric::Sown: return total_sown_has;
        case Metric::Insured: return total_insured_has;
        case Metric::Indemnity: return total_indemnity_soles;
        case Metric::Producers: return Decimal::from_integer(total_producers);
    }
    return {};
}

Summary summarize(const std::vector<model::InsuranceRecord>& records,
                  const std::vector<Dimension>& by, const std::vector<Filter>& filters) {
    if (by.empty()) throw Error(ErrorCode::BadRequest, "at least one grouping dimension is required");
    for (std::size_t i = 0; i < by.size(); ++i) {
        if (std::find(by.begin() + static_cast<std::ptrdiff_t>(i) + 1, by.end(), by[i]) != by.end()) {
            throw Error(ErrorCode::DuplicateDimension,
                        "dimension '" + std::string(to_string(by[i])) + "' listed twice");
        }
    }

    std::map<std::vector<std::string>, SummaryRow> groups;
    Summary summary;
    summary.by = by;
    for (const auto& record : records) {
        const bool keep = std::all_of(filters.begin(), filters.end(),
                                      [&](const Filter& f) { return f.accepts(record); });
        if (!keep) continue;

        std::vector<std::string> key;
        key.reserve(by.size());
        for (Dimension d : by) key.push_back(match_key(field_of(record, d)));

        auto [it, inserted] = groups.try_emplace(std::move(key));
        SummaryRow& row = it->second;
        if (inserted) {
            for (Dimension d : by) row.group_key.emplace_back(d, std::string(model::trim(field_of(record, d))));
        } else {
            for (std::size_t i = 0; i < by.size(); ++i) {
                const std::string_view spelling = model::trim(field_of(record, by[i]));
                if (spelling < row.group_key[i].second) row.group_key[i].second = spelling;
            }
        }
        add_record(row, record);
        add_record(summary.grand_total, record);
    }

    summary.rows.reserve(groups.size());
    for (auto& [key, row] : groups) summary.rows.push_back(std::move(row));
    return summary;
}

std::vector<SummaryRow> top_k(std::vector<SummaryRow> rows, Metric metric, std::size_t k) {
    if (k < 1) throw Error(ErrorCode::BadRequest, "top k must be ≥ 1");
    std::stable_sort(rows.begin(), rows.end(), [&](const SummaryRow& a, const SummaryRow& b) {
        const Decimal ma = a.metric(metric);
        const Decimal mb = b.metric(metric);
        if (ma != mb) return ma > mb;
        return group_match_key(a) < group_match_key(b);
    });
    if (rows.size() > k) rows.resize(k);
    return rows;
}

ingest::Table summary_table(const Summary& summary, bool with_total) {
    ingest::Table table;
    for (Dimension d : summary.by) table.columns.emplace_back(column_name(d));
    for (auto c : {"AREA_SEM_HAS", "AREA_ASEG_HAS", "AMOUNT_IND_SOLES", "NUM_PROD_BENIF", "RECORD_COUNT"}) {
        table.columns.emplace_back(c);
    }
    auto totals = [](const SummaryRow& row, std::vector<std::string>& cells) {
        cells.push_back(row.total_sown_has.to_string());
        cells.push_back(row.total_insured_has.to_string());
        cells.push_back(row.total_indemnity_soles.to_string());
        cells.push_back(std::to_string(row.total_producers));
        cells.push_back(std::to_string(row.record_count));
    };
    for (const auto& row : summary.rows) {
        std::vector<std::string> cells;
        for (const auto& [dim, value] : row.group_key) cells.push_back(value);
        totals(row, cells);
        table.rows.push_back(std::move(cells));
    }
    if (with_total) {
        std::vector<std::string> cells(summary.by.size(), "");
        if (!cells.empty()) cells.front() = "TOTAL";
        totals(summary.grand_total, cells);
        table.rows.push_back(std::move(cells));
    }
    return table;
}

double correlation(const std::vector<SummaryRow>& rows, Metric x, Metric y) {
    using boost::multiprecision::cpp_int;
    if (rows.size() < 2) throw Error(ErrorCode::DegenerateInput, "correlation needs at least two rows");

    // Centered moments on the exact scaled integers: S_ab = nΣab − ΣaΣb.
    cpp_int sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (const auto& row : rows) {
        const cpp_int a = row.metric(x).units();
        const cpp_int b = row.metric(y).units();
        sx += a;
        sy += b;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
    }
    const cpp_int n = static_cast<long long>(rows.size());
    const cpp_int cxx = n * sxx - sx * sx;
    const cpp_int cyy = n * syy - sy * sy;
    const cpp_int cxy = n * sxy - sx * sy;
    if (cxx == 0 || cyy == 0) {
        throw Error(ErrorCode::DegenerateInput, "correlation undefined for a constant column");
    }
    if (cxy * cxy == cxx * cyy) return cxy > 0 ? 1.0 : -1.0;

    const long double r = cxy.convert_to<long double>() /
                          (std::sqrt(cxx.convert_to<long double>()) *
                           std::sqrt(cyy.convert_to<long double>()));
    return std::clamp(static_cast<double>(r), -1.0, 1.0);
}

}  // namespace catastroagri::analytics
