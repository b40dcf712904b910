#include "catastroagri/ingest/dataset.hpp"
#include "catastroagri/service/json.hpp"
#include "catastroagri/service/server.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <thread>

using namespace catastroagri;
using namespace catastroagri::service;

namespace {

class Running {
public:
    explicit Running(ServerConfig config = {}) : server_(std::move(config)) {
        port_ = server_.bind_ephemeral();
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~Running() {
        server_.stop();
        thread_.join();
    }
    httplib::Client client() const {
        httplib::Client c("127.0.0.1", port_);
        c.set_read_timeout(60, 0);
        return c;
    }
    ApiServer& server() { return server_; }

private:
    ApiServer server_;
    int port_ = -1;
    std::thread thread_;
};

json body_of(const httplib::Result& res) { return json::parse(res->body); }

std::uint64_t upload(httplib::Client& c, const std::string& csv, const std::string& name = "upload.csv") {
    const auto res = c.Post("/datasets?name=" + name, csv, "text/csv");
    EXPECT_EQ(res->status, 201) << res->body;
    return body_of(res)["id"].get<std::uint64_t>();
}

std::string fixture_text(const char* name) { return testgen::read_file(testgen::fixture(name)); }

std::string series_csv(const std::vector<double>& values) {
    std::string csv =
        "YEAR,PROVINCE,DISTRICT,SECTOR_EST,NOM_CROP,AREA_SEM_HAS,AREA_ASEG_HAS,AMOUNT_IND_SOLES,NUM_PROD_BENIF\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        csv += std::to_string(2001 + i) + ",P,D,S,C,0," + Decimal::from_double(values[i]).to_string() + ",0,0\n";
    }
    return csv;
}

}  // namespace

TEST(Service, Health) {
    Running r;
    auto c = r.client();
    const auto a = c.Get("/health");
    const auto b = c.Get("/health");
    ASSERT_EQ(a->status, 200);
    EXPECT_EQ(body_of(a)["status"], "ok");
    EXPECT_TRUE(body_of(a).contains("version"));
    EXPECT_EQ(a->body, b->body);
}

TEST(Service, UploadFixture) {
    Running r;
    auto c = r.client();
    const auto res = c.Post("/datasets?name=puno.csv", fixture_text("puno_2010_2011_by_crop.csv"), "text/csv");
    ASSERT_EQ(res->status, 201);
    const auto body = body_of(res);
    EXPECT_EQ(body["record_count"], 5);
    EXPECT_EQ(body["row_error_count"], 0);
    EXPECT_EQ(body["columns"].size(), 9u);
    EXPECT_EQ(body["id"], 1);
}

TEST(Service, UploadErrors) {
    Running r;
    auto c = r.client();
    const std::string header =
        "YEAR,PROVINCE,DISTRICT,SECTOR_EST,NOM_CROP,AREA_SEM_HAS,AREA_ASEG_HAS,AMOUNT_IND_SOLES,NUM_PROD_BENIF\n";
    auto res = c.Post("/datasets", header, "text/csv");
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(body_of(res)["code"], "EmptyInput");

    res = c.Post("/datasets?name=register.xlsx", header + "2010,A,D,S,C,1,1,1,1\n", "application/octet-stream");
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(body_of(res)["code"], "UnsupportedFormat");

    res = c.Post("/datasets", header + "2010,Az\xE1ngaro,D,S,C,1,1,1,1\n", "text/csv");
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(body_of(res)["code"], "EncodingError");

    std::string six = header;
    for (int i = 0; i < 6; ++i) six += std::string("2010,A,D,S,C,1,") + (i == 3 ? "oops" : "1") + ",400,1\n";
    res = c.Post("/datasets", six, "text/csv");
    ASSERT_EQ(res->status, 201);
    EXPECT_EQ(body_of(res)["record_count"], 5);
    EXPECT_EQ(body_of(res)["row_error_count"], 1);
    EXPECT_EQ(body_of(res)["row_errors"][0]["row"], 4);
}

TEST(Service, SummaryByCrop) {
    Running r;
    auto c = r.client();
    const auto id = upload(c, fixture_text("puno_2010_2011_by_crop.csv"));
    const auto res = c.Get("/datasets/" + std::to_string(id) + "/summary?by=crop");
    ASSERT_EQ(res->status, 200);
    const auto body = body_of(res);
    EXPECT_EQ(body["rows"].size(), 5u);
    EXPECT_EQ(body["grand_total"]["insured"], "14838");
    EXPECT_EQ(body["grand_total"]["indemnity"], "5935200");
    EXPECT_EQ(body["grand_total"]["producers"], 47929);
}

TEST(Service, SummaryTopAndFilters) {
    Running r;
    auto c = r.client();
    const auto id = std::to_string(upload(c, fixture_text("puno_2011_by_province.csv")));
    auto res = c.Get("/datasets/" + id + "/summary?by=province&top=2&metric=indemnity");
    ASSERT_EQ(res->status, 200);
    auto rows = body_of(res)["rows"];
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0]["group"]["province"], "EL COLLAO");
    EXPECT_EQ(rows[1]["group"]["province"], "AZANGARO");

    res = c.Get("/datasets/" + id + "/summary?by=province&filter=province:lampa,province:Melgar");
    EXPECT_EQ(body_of(res)["rows"].size(), 2u);
    EXPECT_EQ(body_of(res)["grand_total"]["insured"], "2387");

    res = c.Get("/datasets/" + id + "/summary?by=province&filter=province:NOWHERE");
    ASSERT_EQ(res->status, 200);
    EXPECT_TRUE(body_of(res)["rows"].empty());
    EXPECT_EQ(body_of(res)["grand_total"]["insured"], "0");
    EXPECT_EQ(body_of(res)["empty"], true);
}

TEST(Service, SummaryErrors) {
    Running r;
    auto c = r.client();
    const auto id = std::to_string(upload(c, fixture_text("puno_2011_by_province.csv")));
    auto res = c.Get("/datasets/" + id + "/summary?by=colour");
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(body_of(res)["code"], "BadDimension");
    res = c.Get("/datasets/" + id + "/summary?by=crop,crop");
    EXPECT_EQ(body_of(res)["code"], "DuplicateDimension");
    res = c.Get("/datasets/99/summary?by=crop");
    EXPECT_EQ(res->status, 404);
    EXPECT_EQ(body_of(res)["code"], "UnknownDataset");
    res = c.Get("/no/such/route");
    EXPECT_EQ(res->status, 404);
    EXPECT_EQ(body_of(res)["code"], "NotFound");
}

TEST(Service, Audit) {
    Running r;
    auto c = r.client();
    const auto id = std::to_string(upload(c, fixture_text("puno_2010_2011_by_crop.csv")));
    auto res = c.Get("/datasets/" + id + "/audit?rates=400,800");
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(body_of(res)["matches"], (json{{"400", 5}, {"800", 0}}));
    res = c.Get("/datasets/" + id + "/audit?rates=0");
    EXPECT_EQ(res->status, 400);
    EXPECT_EQ(body_of(res)["code"], "InvalidRate");
    res = c.Get("/datasets/" + id + "/audit");
    EXPECT_EQ(body_of(res)["matches"], (json{{"800", 0}}));
    EXPECT_EQ(body_of(res)["unmatched"].size(), 5u);

    const std::string zero =
        "YEAR,PROVINCE,DISTRICT,SECTOR_EST,NOM_CROP,AREA_SEM_HAS,AREA_ASEG_HAS,AMOUNT_IND_SOLES,NUM_PROD_BENIF\n"
        "2010,A,D,S,C,0,0,0,0\n2010,B,D,S,C,0,2,800,0\n";
    const auto zid = std::to_string(upload(c, zero));
    res = c.Get("/datasets/" + zid + "/audit?rates=400");
    EXPECT_EQ(body_of(res)["indeterminate_count"], 1);
    EXPECT_EQ(body_of(res)["indeterminate"][0]["province"], "A");
}

TEST(Service, Records) {
    Running r;
    auto c = r.client();
    const auto id = std::to_string(upload(c, fixture_text("puno_2011_by_province.csv")));
    const auto res = c.Get("/datasets/" + id + "/records?limit=3");
    ASSERT_EQ(res->status, 200);
    EXPECT_EQ(body_of(res)["total"], 9);
    EXPECT_EQ(body_of(res)["records"].size(), 3u);
    EXPECT_EQ(body_of(res)["records"][0]["insured_area_has"], "1817");
    EXPECT_EQ(c.Get("/datasets/" + id)->status, 200);
}

TEST(Service, ForecastLinear) {
    Running r;
    auto c = r.client();
    const auto id = std::to_string(upload(c, series_csv({2, 4, 6})));
    const json request = {{"series_spec", {{"metric", "insured"}}}, {"method", "linear"}, {"h", 1}};
    const auto res = c.Post("/datasets/" + id + "/forecast", request.dump(), "application/json");
    ASSERT_EQ(res->status, 200) << res->body;
    EXPECT_EQ(body_of(res)["forecast"]["point_forecasts"], json::array({8.0}));
    EXPECT_FALSE(body_of(res).contains("fit"));
}

TEST(Service, ForecastTooShortIs422) {
    Running r;
    auto c = r.client();
    const auto id = std::to_string(upload(c, series_csv({1, 3, 2, 5, 4, 6, 8, 7, 9, 10})));
    const json request = {{"method", "sarima"}, {"s", 12}, {"h", 1}};
    const auto res = c.Post("/datasets/" + id + "/forecast", request.dump(), "application/json");
    EXPECT_EQ(res->status, 422);
    EXPECT_EQ(body_of(res)["code"], "SeriesTooShort");
    const auto bad = c.Post("/datasets/" + id + "/forecast", "{not json", "application/json");
    EXPECT_EQ(bad->status, 400);
    EXPECT_EQ(body_of(bad)["code"], "BadRequest");
}

TEST(Service, ForecastSarimaOnSimulatedFixture) {
    Running r;
    auto c = r.client();
    const auto id = std::to_string(upload(c, fixture_text("simulated_airline_240.csv")));
    const json request = {{"series_spec", {{"metric", "insured"}, {"period_column_or_order", "campaign"}}},
                          {"method", "sarima"},
                          {"s", 12},
                          {"h", 12}};
    const auto res = c.Post("/datasets/" + id + "/forecast", request.dump(), "application/json");
    ASSERT_EQ(res->status, 200) << res->body;
    const auto body = body_of(res);
    EXPECT_EQ(body["diagnostics"]["verdict"], true);
    EXPECT_NEAR(body["fit"]["theta"].get<double>(), 0.89, 0.08);
    EXPECT_NEAR(body["fit"]["seasonal_theta"].get<double>(), 0.92, 0.08);
    EXPECT_EQ(body["forecast"]["point_forecasts"].size(), 12u);
    EXPECT_EQ(body["diagnostics"]["ljung_box"].size(), 4u);
}

TEST(Service, ExportRoundTrips) {
    Running r;
    auto c = r.client();
    const auto id = std::to_string(upload(c, fixture_text("puno_2011_by_province.csv")));
    auto res = c.Get("/datasets/" + id + "/export.csv");
    ASSERT_EQ(res->status, 200);
    EXPECT_NE(res->get_header_value("Content-Type").find("text/csv"), std::string::npos);
    EXPECT_NE(res->get_header_value("Content-Disposition").find("attachment"), std::string::npos);
    const auto original = ingest::parse_csv(fixture_text("puno_2011_by_province.csv"));
    EXPECT_EQ(ingest::parse_csv(res->body).records, original.records);

    res = c.Get("/datasets/" + id + "/export.csv?by=province");
    ASSERT_EQ(res->status, 200);
    const auto table = ingest::read_table(res->body);
    EXPECT_EQ(table.rows.size(), 9u);
    Decimal insured, indemnity;
    for (const auto& row : table.rows) {
        insured += *Decimal::parse(row[2]);
        indemnity += *Decimal::parse(row[3]);
    }
    EXPECT_EQ(insured, Decimal::from_integer(14838));
    EXPECT_EQ(indemnity, Decimal::from_integer(5935200));

    EXPECT_EQ(c.Get("/datasets/" + id + "/export.csv?by=colour")->status, 400);
    EXPECT_EQ(c.Get("/datasets/42/export.csv")->status, 404);
}

TEST(Service, OversizeUploadIs413) {
    ::setenv(kMaxUploadEnv, "1024", 1);
    auto config = config_from_environment();
    ::unsetenv(kMaxUploadEnv);
    ASSERT_EQ(config.max_upload_bytes, 1024u);
    Running r(config);
    auto c = r.client();
    const auto res = c.Post("/datasets", std::string(4096, 'x'), "text/csv");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 413);
    EXPECT_EQ(body_of(res)["code"], "PayloadTooLarge");
}

TEST(Service, StoreEvictsOldest) {
    ServerConfig config;
    config.max_datasets = 2;
    Running r(config);
    auto c = r.client();
    const auto csv = fixture_text("puno_2011_by_province.csv");
    const auto a = upload(c, csv);
    upload(c, csv);
    const auto last = upload(c, csv);
    EXPECT_EQ(last, 3u);
    EXPECT_EQ(c.Get("/datasets/" + std::to_string(a))->status, 404);
    EXPECT_EQ(r.server().store().size(), 2u);
}

TEST(Service, ConcurrentUploadsAndReads) {
    ServerConfig config;
    config.max_datasets = 64;
    Running r(config);
    const auto csv = fixture_text("puno_2010_2011_by_crop.csv");
    {
        auto c = r.client();
        upload(c, csv);
    }
    std::atomic<int> failures{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < 8; ++w) {
        workers.emplace_back([&, w] {
            auto c = r.client();
            for (int i = 0; i < 10; ++i) {
                if (w % 2 == 0) {
                    const auto res = c.Post("/datasets", csv, "text/csv");
                    if (!res || res->status != 201) ++failures;
                } else {
                    const auto health = c.Get("/health");
                    const auto summary = c.Get("/datasets/1/summary?by=crop");
                    if (!health || health->status != 200) ++failures;
                    if (!summary || summary->status != 200 ||
                        json::parse(summary->body)["grand_total"]["insured"] != "14838") {
                        ++failures;
                    }
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    EXPECT_EQ(failures.load(), 0);
    const auto ids = r.server().store().ids();
    EXPECT_EQ(ids.back(), 41u);
}

TEST(Service, IdenticalReadsAreByteIdentical) {
    Running r;
    auto c = r.client();
    const auto id = std::to_string(upload(c, fixture_text("puno_2011_by_province.csv")));
    const auto path = "/datasets/" + id + "/summary?by=province&top=3&metric=insured";
    EXPECT_EQ(c.Get(path)->body, c.Get(path)->body);
}

TEST(Store, IdsNeverReused) {
    DatasetStore store(3);
    std::vector<ingest::DatasetId> seen;
    for (int i = 0; i < 10; ++i) seen.push_back(store.insert(ingest::Dataset{})->id);
    for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], i + 1);
    EXPECT_EQ(store.ids(), (std::vector<ingest::DatasetId>{8, 9, 10}));
    EXPECT_EQ(store.find(1), nullptr);
}
