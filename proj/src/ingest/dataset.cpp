#include "catastroagri/ingest/dataset.hpp"

#include "catastroagri/error.hpp"

#include <algorithm>
#include <charconv>

namespace catastroagri::ingest {

namespace {

constexpr std::size_t kHeaderCount = kCanonicalHeaders.size();

std::size_t index_of(CanonicalHeader h) { return static_cast<std::size_t>(h); }

std::string lower_ascii(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::optional<std::int64_t> parse_count(std::string_view text) {
    text = model::trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

}  // namespace

std::string_view canonical_name(CanonicalHeader header) noexcept {
    constexpr std::string_view names[] = {
        "YEAR",       "PROVINCE",      "DISTRICT",         "SECTOR_EST",     "NOM_CROP",
        "AREA_SEM_HAS", "AREA_ASEG_HAS", "AMOUNT_IND_SOLES", "NUM_PROD_BENIF",
    };
    return names[index_of(header)];
}

std::string normalize_header(std::string_view header) {
    std::string out;
    out.reserve(header.size());
    for (char c : header) {
        const auto u = static_cast<unsigned char>(c);
        if (u >= 0x80) {
            out += c;
        } else if (c >= 'a' && c <= 'z') {
            out += static_cast<char>(c - 'a' + 'A');
        } else if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) {
            out += c;
        }
    }
    return out;
}

HeaderMapping HeaderMapping::standard() {
    HeaderMapping m;
    using H = CanonicalHeader;
    for (H h : kCanonicalHeaders) m.add_alias(h, canonical_name(h));

    for (auto a : {"Campaña Agricola", "Campana Agricola", "Campaign", "Campaign Year", "Año", "Anio"})
        m.add_alias(H::Year, a);
    for (auto a : {"Provincia"}) m.add_alias(H::Province, a);
    for (auto a : {"Distrito"}) m.add_alias(H::District, a);
    for (auto a : {"SECTOR EST", "Statistical Sector", "Sector Estadistico", "Sector"})
        m.add_alias(H::SectorEst, a);
    for (auto a : {"NOM CROP", "Crop Name", "Crop", "Cultivo", "Nombre Cultivo"})
        m.add_alias(H::NomCrop, a);
    for (auto a : {"AREA SEM(Has)", "Sown Area (Has)", "Sown Area", "Superficie Sembrada"})
        m.add_alias(H::AreaSemHas, a);
    for (auto a : {"AREA ASEG(Has)", "Insured Area (Has)", "Insured Area", "SUP-ASEG(hs)",
                   "SUPER ASEGUR", "Superficie Asegurada"})
        m.add_alias(H::AreaAsegHas, a);
    for (auto a : {"AMOUNT INDN(S)", "Amount Ind (Soles)", "Amount Indemnity", "Mnt INDM",
                   "AMOUNT INDEM S/.", "Monto Indemnizado"})
        m.add_alias(H::AmountIndSoles, a);
    for (auto a : {"NUM PROD BENIF", "N. of prod benefited", "N.PROD BEN", "Producers Benefited",
                   "Productores Beneficiados"})
        m.add_alias(H::NumProdBenif, a);
    return m;
}

void HeaderMapping::add_alias(CanonicalHeader header, std::string_view alias) {
    std::string key = normalize_header(alias);
    if (key.empty()) throw Error(ErrorCode::BadRequest, "header alias normalizes to nothing");
    if (const auto it = by_normalized_.find(key); it != by_normalized_.end() && it->second != header) {
        throw Error(ErrorCode::BadRequest, "alias '" + std::string(alias) + "' already maps to " +
                                               std::string(canonical_name(it->second)));
    }
    by_normalized_[key] = header;
    aliases_[header].insert(std::string(alias));
}

std::optional<CanonicalHeader> HeaderMapping::match(std::string_view header) const {
    const auto it = by_normalized_.find(normalize_header(header));
    if (it == by_normalized_.end()) return std::nullopt;
    return it->second;
}

const std::set<std::string>& HeaderMapping::aliases(CanonicalHeader header) const {
    static const std::set<std::string> none;
    const auto it = aliases_.find(header);
    return it == aliases_.end() ? none : it->second;
}

bool HeaderMapping::is_consistent() const {
    std::map<std::string, CanonicalHeader> seen;
    for (CanonicalHeader h : kCanonicalHeaders) {
        const auto& set = aliases(h);
        if (set.empty()) return false;
        for (const auto& alias : set) {
            const auto [it, inserted] = seen.emplace(normalize_header(alias), h);
            if (!inserted && it->second != h) return false;
        }
    }
    return true;
}

Dataset parse_csv(std::string_view bytes, const HeaderMapping& mapping, std::string source_name) {
    if (!is_valid_utf8(bytes)) throw Error(ErrorCode::EncodingError, "input is not valid UTF-8");

    auto records = read_csv_records(strip_bom(bytes));
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "input has no header row");

    const auto& header = records.front().fields;
    std::array<std::optional<std::size_t>, kHeaderCount> position;
    for (std::size_t col = 0; col < header.size(); ++col) {
        const auto canonical = mapping.match(header[col]);
        if (!canonical) continue;
        auto& slot = position[index_of(*canonical)];
        if (slot) {
            throw Error(ErrorCode::UnsupportedFormat, "columns '" + header[*slot] + "' and '" +
                                                          header[col] + "' both map to " +
                                                          std::string(canonical_name(*canonical)));
        }
        slot = col;
    }
    std::string missing;
    for (CanonicalHeader h : kCanonicalHeaders) {
        if (position[index_of(h)]) continue;
        if (!missing.empty()) missing += ", ";
        missing += canonical_name(h);
    }
    if (!missing.empty()) {
        throw Error(ErrorCode::UnsupportedFormat, "missing required columns: " + missing);
    }

    Dataset dataset;
    dataset.source_name = std::move(source_name);
    dataset.ingested_at = std::chrono::system_clock::now();
    dataset.columns = header;
    dataset.data_rows = records.size() - 1;
    if (dataset.data_rows == 0) throw Error(ErrorCode::EmptyInput, "input has a header but no data rows");

    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& fields = records[r].fields;
        if (fields.size() != header.size()) {
            dataset.row_errors.push_back({r, "expected " + std::to_string(header.size()) +
                                                 " fields, found " + std::to_string(fields.size())});
            continue;
        }
        auto cell = [&](CanonicalHeader h) -> std::string_view {
            return model::trim(fields[*position[index_of(h)]]);
        };

        std::vector<std::string> problems;
        auto decimal = [&](CanonicalHeader h) {
            const auto value = Decimal::parse(cell(h));
            if (!value) {
                problems.push_back(std::string(canonical_name(h)) + " is not a plain decimal: '" +
                                   std::string(cell(h)) + "'");
                return Decimal{};
            }
            return *value;
        };

        model::InsuranceRecord rec;
        rec.campaign_year = cell(CanonicalHeader::Year);
        rec.province = cell(CanonicalHeader::Province);
        rec.district = cell(CanonicalHeader::District);
        rec.statistical_sector = cell(CanonicalHeader::SectorEst);
        rec.crop_name = cell(CanonicalHeader::NomCrop);
        rec.sown_area_has = decimal(CanonicalHeader::AreaSemHas);
        rec.insured_area_has = decimal(CanonicalHeader::AreaAsegHas);
        rec.indemnity_amount_soles = decimal(CanonicalHeader::AmountIndSoles);
        if (const auto count = parse_count(cell(CanonicalHeader::NumProdBenif))) {
            rec.producers_benefited = *count;
        } else {
            problems.push_back("NUM_PROD_BENIF is not an integer: '" +
                               std::string(cell(CanonicalHeader::NumProdBenif)) + "'");
        }

        if (problems.empty()) {
            for (const auto& v : model::validate_record(rec).violations) problems.push_back(v.message());
        }
        if (!problems.empty()) {
            std::string message;
            for (const auto& p : problems) {
                if (!message.empty()) message += "; ";
                message += p;
            }
            dataset.row_errors.push_back({r, std::move(message)});
            continue;
        }
        dataset.records.push_back(std::move(rec));
    }
    return dataset;
}

FileFormat detect_format(std::string_view file_name) {
    const auto slash = file_name.find_last_of("/\\");
    if (slash != std::string_view::npos) file_name.remove_prefix(slash + 1);
    const auto dot = file_name.find_last_of('.');
    FileFormat format;
    if (dot == std::string_view::npos || dot == 0) return format;
    format.extension = lower_ascii(file_name.substr(dot + 1));
    if (format.extension == "csv") format.kind = FileFormat::Kind::Csv;
    return format;
}

Table records_table(const std::vector<model::InsuranceRecord>& records) {
    Table table;
    for (CanonicalHeader h : kCanonicalHeaders) table.columns.emplace_back(canonical_name(h));
    table.rows.reserve(records.size());
    for (const auto& r : records) {
        table.rows.push_back({r.campaign_year, r.province, r.district, r.statistical_sector,
                              r.crop_name, r.sown_area_has.to_string(),
                              r.insured_area_has.to_string(), r.indemnity_amount_soles.to_string(),
                              std::to_string(r.producers_benefited)});
    }
    return table;
}

std::string export_csv(const Table& table) { return write_csv(table); }

std::string export_csv(const std::vector<model::InsuranceRecord>& records) {
    return write_csv(records_table(records));
}

}  // namespace catastroagri::ingest
