#include "catastroagri/service/server.hpp"

#include "catastroagri/analytics/audit.hpp"
#include "catastroagri/analytics/forecasting.hpp"
#include "catastroagri/analytics/indemnity.hpp"
#include "catastroagri/analytics/summary.hpp"
#include "catastroagri/ingest/dataset.hpp"
#include "catastroagri/service/json.hpp"

#include <httplib.h>

#include <charconv>
#include <cstdlib>

namespace catastroagri::service {

namespace {

constexpr const char* kJson = "application/json";

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownDataset:
        case ErrorCode::NotFound:
            return 404;
        case ErrorCode::PayloadTooLarge:
            return 413;
        default:
            return is_computation_error(code) ? 422 : 400;
    }
}

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, ErrorCode code, std::string_view message) {
    send_json(res, status_for(code), error_json(code, message));
}

std::optional<std::size_t> parse_size(std::string_view text) {
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!model::trim(item).empty()) out.push_back(std::move(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::vector<analytics::Filter> filters_from_query(const httplib::Request& req) {
    std::vector<std::string> items;
    const auto count = req.get_param_value_count("filter");
    for (std::size_t i = 0; i < count; ++i) {
        for (auto& item : split_list(req.get_param_value("filter", i))) items.push_back(std::move(item));
    }
    return analytics::parse_filters(items);
}

}  // namespace

ServerConfig config_from_environment() {
    ServerConfig config;
    if (const char* cap = std::getenv(kMaxUploadEnv); cap != nullptr) {
        if (const auto bytes = parse_size(cap); bytes && *bytes > 0) config.max_upload_bytes = *bytes;
    }
    return config;
}

struct ApiServer::Impl {
    ServerConfig config;
    DatasetStore store;
    httplib::Server server;

    explicit Impl(ServerConfig cfg) : config(std::move(cfg)), store(config.max_datasets) {}

    std::shared_ptr<const ingest::Dataset> dataset_for(const httplib::Request& req) const {
        const auto id = parse_size(req.matches[1].str());
        auto ds = id ? store.find(*id) : nullptr;
        if (!ds) throw Error(ErrorCode::UnknownDataset, "no dataset with id " + req.matches[1].str());
        return ds;
    }

    // Runs a handler, mapping library errors onto the documented responses.
    template <class F>
    httplib::Server::Handler guarded(F&& body) {
        return [body = std::forward<F>(body)](const httplib::Request& req, httplib::Response& res) {
            try {
                body(req, res);
            } catch (const Error& e) {
                send_error(res, e.code(), e.what());
            } catch (const nlohmann::json::exception& e) {
                send_error(res, ErrorCode::BadRequest, std::string("malformed JSON: ") + e.what());
            }
        };
    }

    void routes() {
        server.set_payload_max_length(config.max_upload_bytes);

        server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
            if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
            if (res.status == 413) {
                send_error(res, ErrorCode::PayloadTooLarge, "upload exceeds the configured size cap");
            } else if (res.status == 404) {
                send_error(res, ErrorCode::NotFound, "no such route");
            } else {
                send_json(res, res.status, error_json(ErrorCode::BadRequest, "request rejected"));
            }
            return httplib::Server::HandlerResponse::Handled;
        });

        server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
            send_json(res, 200, {{"status", "ok"}, {"version", CATASTROAGRI_VERSION}});
        });

        server.Post("/datasets", guarded([this](const httplib::Request& req, httplib::Response& res) {
            if (req.body.empty()) throw Error(ErrorCode::EmptyInput, "request body is empty");
            std::string name = req.has_param("name") ? req.get_param_value("name") : "upload.csv";
            const auto format = ingest::detect_format(name);
            if (!format.is_csv()) {
                throw Error(ErrorCode::UnsupportedFormat,
                            "the file format is not supported: ." + format.extension);
            }
            auto snapshot = store.insert(ingest::parse_csv(req.body, ingest::HeaderMapping::standard(), name));
            send_json(res, 201, dataset_json(*snapshot));
        }));

        server.Get(R"(/datasets/(\d+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, dataset_json(*dataset_for(req)));
        }));

        server.Get(R"(/datasets/(\d+)/records)",
                   guarded([this](const httplib::Request& req, httplib::Response& res) {
                       const auto ds = dataset_for(req);
                       std::size_t limit = 50;
                       if (req.has_param("limit")) {
                           const auto parsed = parse_size(req.get_param_value("limit"));
                           if (!parsed) throw Error(ErrorCode::BadRequest, "limit must be a non-negative integer");
                           limit = *parsed;
                       }
                       json rows = json::array();
                       for (std::size_t i = 0; i < ds->records.size() && i < limit; ++i) {
                           rows.push_back(record_json(ds->records[i]));
                       }
                       send_json(res, 200, {{"total", ds->records.size()}, {"records", std::move(rows)}});
                   }));

        server.Get(R"(/datasets/(\d+)/summary)",
                   guarded([this](const httplib::Request& req, httplib::Response& res) {
                       const auto ds = dataset_for(req);
                       if (!req.has_param("by")) throw Error(ErrorCode::BadDimension, "query parameter 'by' is required");
                       const auto by = analytics::parse_dimensions(req.get_param_value("by"));
                       const auto summary = analytics::summarize(ds->records, by, filters_from_query(req));
                       std::vector<analytics::SummaryRow> rows = summary.rows;
                       if (req.has_param("top")) {
                           const auto k = parse_size(req.get_param_value("top"));
                           if (!k || *k < 1) throw Error(ErrorCode::BadRequest, "top must be a positive integer");
                           const auto metric = analytics::parse_metric(
                               req.has_param("metric") ? req.get_param_value("metric") : "insured");
                           rows = analytics::top_k(std::move(rows), metric, *k);
                       }
                       send_json(res, 200, summary_json(summary, rows));
                   }));

        server.Get(R"(/datasets/(\d+)/audit)", guarded([this](const httplib::Request& req, httplib::Response& res) {
            const auto ds = dataset_for(req);
            const auto rates = req.has_param("rates")
                                   ? analytics::parse_rates(req.get_param_value("rates"))
                                   : std::vector<Decimal>{analytics::kDefaultRateSolesPerHa};
            send_json(res, 200, audit_json(analytics::rate_audit(ds->records, rates), ds->records));
        }));

        server.Post(R"(/datasets/(\d+)/forecast)",
                    guarded([this](const httplib::Request& req, httplib::Response& res) {
                        const auto ds = dataset_for(req);
                        const auto request = parse_forecast_request(json::parse(req.body.empty() ? "{}" : req.body));
                        send_json(res, 200, forecast_json(analytics::run_forecast(ds->records, request)));
                    }));

        server.Get(R"(/datasets/(\d+)/export\.csv)",
                   guarded([this](const httplib::Request& req, httplib::Response& res) {
                       const auto ds = dataset_for(req);
                       std::string body;
                       std::string file = "dataset-" + std::to_string(ds->id);
                       if (req.has_param("by")) {
                           const auto by = analytics::parse_dimensions(req.get_param_value("by"));
                           body = ingest::export_csv(analytics::summary_table(
                               analytics::summarize(ds->records, by, filters_from_query(req))));
                           file += "-summary";
                       } else {
                           body = ingest::export_csv(ds->records);
                       }
                       res.status = 200;
                       res.set_header("Content-Disposition", "attachment; filename=\"" + file + ".csv\"");
                       res.set_content(std::move(body), "text/csv; charset=utf-8");
                   }));

        if (config.ui_dir) server.set_mount_point("/", *config.ui_dir);
    }
};

ApiServer::ApiServer(ServerConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
    impl_->routes();
}

ApiServer::~ApiServer() { stop(); }

bool ApiServer::listen() { return impl_->server.listen(impl_->config.host, impl_->config.port); }

int ApiServer::bind_ephemeral(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool ApiServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void ApiServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

void ApiServer::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

DatasetStore& ApiServer::store() { return impl_->store; }

const ServerConfig& ApiServer::config() const { return impl_->config; }

}  // namespace catastroagri::service
