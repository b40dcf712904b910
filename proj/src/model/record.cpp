#include "catastroagri/model/record.hpp"

#include <tuple>

namespace catastroagri::model {

std::string_view trim(std::string_view text) {
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto first = text.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

ValidationReport validate_record(const InsuranceRecord& record) {
    ValidationReport report;
    auto require_text = [&](std::string_view field, const std::string& value) {
        if (trim(value).empty()) report.violations.push_back({std::string(field), "must be non-empty"});
    };
    require_text("campaign_year", record.campaign_year);
    require_text("province", record.province);
    require_text("district", record.district);
    require_text("statistical_sector", record.statistical_sector);
    require_text("crop_name", record.crop_name);

    auto require_non_negative = [&](std::string_view field, Decimal value) {
        if (value < Decimal{}) report.violations.push_back({std::string(field), "must be ≥ 0"});
    };
    require_non_negative("sown_area_has", record.sown_area_has);
    require_non_negative("insured_area_has", record.insured_area_has);
    require_non_negative("indemnity_amount_soles", record.indemnity_amount_soles);
    if (record.producers_benefited < 0) {
        report.violations.push_back({"producers_benefited", "must be ≥ 0"});
    }

    if (record.insured_area_has > record.sown_area_has) {
        report.warnings.push_back({"insured_area_has", "insured exceeds sown"});
    }
    return report;
}

std::optional<int> campaign_start_year(std::string_view campaign_year) {
    campaign_year = trim(campaign_year);
    if (campaign_year.size() < 4) return std::nullopt;
    int year = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const char c = campaign_year[i];
        if (c < '0' || c > '9') return std::nullopt;
        year = year * 10 + (c - '0');
    }
    if (campaign_year.size() > 4 && campaign_year[4] >= '0' && campaign_year[4] <= '9') {
        return std::nullopt;
    }
    return year;
}

bool campaign_less(std::string_view a, std::string_view b) {
    const auto ya = campaign_start_year(a);
    const auto yb = campaign_start_year(b);
    const bool ha = ya.has_value();
    const bool hb = yb.has_value();
    return std::make_tuple(!ha, ya.value_or(0), a) < std::make_tuple(!hb, yb.value_or(0), b);
}

}  // namespace catastroagri::model
