#pragma once

#include "catastroagri/service/store.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

namespace catastroagri::service {

struct ServerConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t max_datasets = DatasetStore::kDefaultCapacity;
    std::size_t max_upload_bytes = 50u * 1024u * 1024u;
    std::optional<std::string> ui_dir;
};

inline constexpr const char* kMaxUploadEnv = "CATASTROAGRI_MAX_UPLOAD_BYTES";

/// Default configuration with the upload cap taken from
/// CATASTROAGRI_MAX_UPLOAD_BYTES when it holds a positive integer.
ServerConfig config_from_environment();

/// HTTP/1.1 JSON API over a DatasetStore.
///
///   GET  /health
///   POST /datasets                         body: CSV
///   GET  /datasets/{id}
///   GET  /datasets/{id}/records?limit=n
///   GET  /datasets/{id}/summary?by=&filter=&top=&metric=
///   GET  /datasets/{id}/audit?rates=
///   POST /datasets/{id}/forecast           body: JSON
///   GET  /datasets/{id}/export.csv?by=&filter=
///
/// Errors answer {"code", "message"}: 400 for bad input, 404 for unknown
/// datasets or routes, 413 above the upload cap, 422 for model failures.
class ApiServer {
public:
    explicit ApiServer(ServerConfig config);
    ~ApiServer();
    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Blocks serving on config.host:config.port. Returns false if the
    /// socket could not be bound.
    bool listen();
    /// Binds to an ephemeral port on `host` and returns it (or -1); call
    /// listen_after_bind() afterwards, typically from another thread.
    int bind_ephemeral(const std::string& host = "127.0.0.1");
    bool listen_after_bind();
    void wait_until_ready() const;
    void stop();

    DatasetStore& store();
    const ServerConfig& config() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace catastroagri::service
