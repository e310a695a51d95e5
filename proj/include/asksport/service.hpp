#pragma once

#include "asksport/config.hpp"
#include "asksport/index.hpp"

#include <atomic>
#include <memory>
#include <string>
#include <string_view>

namespace asksport {

struct HttpReply {
    int status = 200;
    std::string body;  // JSON
};

/// JSON API over one immutable index:
///   POST /api/ask, GET /api/status, GET /api/document/{doc_id}, GET /api/health
///
/// The index is loaded once by load(); until then /api/status reports
/// "loading" and /api/ask answers 503. Handlers only read shared state, so
/// requests run concurrently without locking.
class Service {
public:
    explicit Service(ServiceConfig config);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Loads config.index_path. Throws IndexError on a bad file.
    void load();
    /// Uses an already built index instead of reading the file.
    void load(Index index);
    bool ready() const noexcept { return ready_.load(std::memory_order_acquire); }

    HttpReply handle_ask(std::string_view request_body) const;
    HttpReply handle_status() const;
    HttpReply handle_document(std::string_view doc_id) const;
    HttpReply handle_health() const;

    /// Binds the listening socket; returns the bound port (config.port, or an
    /// ephemeral port when config.port is 0). Throws Error if binding fails.
    int bind();
    /// Serves on the bound socket until stop(); blocks.
    void run();
    /// Blocks until run() has entered its accept loop on another thread.
    void wait_until_running() const;

    /// Stops accepting connections. In-flight requests finish first.
    void stop();

    const ServiceConfig& config() const noexcept { return config_; }

private:
    struct Http;

    ServiceConfig config_;
    std::unique_ptr<const Index> index_;
    std::string corpus_name_;
    std::atomic<bool> ready_{false};
    std::unique_ptr<Http> http_;
};

/// Validates the config, starts listening (status "loading"), loads the index
/// and serves until SIGINT or SIGTERM. Throws on startup failure.
void serve(const ServiceConfig& config);

} // namespace asksport
