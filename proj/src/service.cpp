#include "asksport/service.hpp"

#include "asksport/error.hpp"
#include "asksport/pipeline.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <csignal>
#include <set>
#include <thread>

namespace asksport {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::size_t kMaxDocsPerRequest = 1000;

HttpReply error_reply(int status, const std::string& message) {
    return {status, json{{"error", message}}.dump()};
}

std::atomic<bool> g_stop_requested{false};

extern "C" void on_termination_signal(int) { g_stop_requested.store(true); }

} // namespace

struct Service::Http {
    httplib::Server server;
    int port = -1;
};

Service::Service(ServiceConfig config) : config_(std::move(config)), http_(std::make_unique<Http>()) {
    auto& server = http_->server;

    server.Post("/api/ask", [this](const httplib::Request& req, httplib::Response& res) {
        const auto reply = handle_ask(req.body);
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    });
    server.Get("/api/status", [this](const httplib::Request&, httplib::Response& res) {
        const auto reply = handle_status();
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    });
    server.Get(R"(/api/document/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
        const auto reply = handle_document(req.matches[1].str());
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    });
    server.Get("/api/health", [this](const httplib::Request&, httplib::Response& res) {
        const auto reply = handle_health();
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    });
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });

    server.set_post_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_header("Origin")) {
            return;
        }
        const auto origin = req.get_header_value("Origin");
        const auto& allowed = config_.cors_allowed_origins;
        if (std::find(allowed.begin(), allowed.end(), "*") != allowed.end() ||
            std::find(allowed.begin(), allowed.end(), origin) != allowed.end()) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Vary", "Origin");
        }
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        spdlog::error("request failed: {}", what);
        const auto reply = error_reply(500, what);
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    });

    if (!config_.static_dir.empty() && !server.set_mount_point("/", config_.static_dir.string())) {
        throw ConfigError("static_dir '" + config_.static_dir.string() + "' is not a directory");
    }
}

Service::~Service() {
    stop();
}

void Service::load() {
    load(load_index(config_.index_path));
}

void Service::load(Index index) {
    if (ready()) {
        throw Error("service index is already loaded");
    }
    if (config_.corpus_name.empty()) {
        std::set<std::string> tags;
        for (const auto& d : index.docs()) {
            tags.insert(d.doc.source_tag);
        }
        for (const auto& t : tags) {
            corpus_name_ += (corpus_name_.empty() ? "" : ",") + t;
        }
    } else {
        corpus_name_ = config_.corpus_name;
    }
    index_ = std::make_unique<const Index>(std::move(index));
    ready_.store(true, std::memory_order_release);
}

HttpReply Service::handle_ask(std::string_view request_body) const {
    const json request = json::parse(request_body, nullptr, false);
    if (request.is_discarded() || !request.is_object()) {
        return error_reply(400, "request body must be a JSON object");
    }
    const auto question = request.find("question");
    if (question == request.end() || !question->is_string()) {
        return error_reply(400, "\"question\" must be a string");
    }

    AskOptions options;
    options.reader_mode = config_.reader_mode;
    options.remote = RemoteReaderConfig{config_.remote_reader_url,
                                        std::chrono::milliseconds(config_.remote_timeout_ms)};
    options.k_docs = config_.k_docs;
    options.n_answers = config_.n_answers;
    if (const auto k = request.find("k_docs"); k != request.end()) {
        if (!k->is_number_integer() || k->get<std::int64_t>() < 1 ||
            k->get<std::int64_t>() > static_cast<std::int64_t>(kMaxDocsPerRequest)) {
            return error_reply(400, "\"k_docs\" must be an integer in [1, 1000]");
        }
        options.k_docs = k->get<std::size_t>();
    }
    if (const auto n = request.find("n_answers"); n != request.end()) {
        if (!n->is_number_integer() || n->get<std::int64_t>() < 1 ||
            n->get<std::int64_t>() > static_cast<std::int64_t>(kDefaultAnswers)) {
            return error_reply(400, "\"n_answers\" must be an integer in [1, 3]");
        }
        options.n_answers = n->get<std::size_t>();
    }

    if (!ready()) {
        return error_reply(503, "index is still loading");
    }
    try {
        const auto response = ask(*index_, question->get<std::string>(), options);
        return {200, to_json(response).dump(-1, ' ', false, json::error_handler_t::replace)};
    } catch (const ReaderUnavailableError& e) {
        return error_reply(502, e.what());
    } catch (const ProtocolError& e) {
        return error_reply(502, e.what());
    }
}

HttpReply Service::handle_status() const {
    ordered_json status;
    if (!ready()) {
        status["state"] = "loading";
        status["doc_count"] = 0;
        status["corpus"] = config_.corpus_name;
    } else {
        status["state"] = "ready";
        status["doc_count"] = index_->n_docs();
        status["corpus"] = corpus_name_;
    }
    status["reader_mode"] = to_string(config_.reader_mode);
    return {200, status.dump()};
}

HttpReply Service::handle_document(std::string_view doc_id) const {
    if (!ready()) {
        return error_reply(503, "index is still loading");
    }
    const auto doc = get_document(*index_, doc_id);
    if (!doc) {
        return error_reply(404, "no document with id '" + std::string(doc_id) + "'");
    }
    ordered_json out;
    out["doc_id"] = doc->doc_id;
    out["title"] = doc->title;
    out["url"] = doc->url;
    out["body"] = doc->body;
    out["source_tag"] = doc->source_tag;
    return {200, out.dump(-1, ' ', false, json::error_handler_t::replace)};
}

HttpReply Service::handle_health() const {
    return {200, R"({"status":"ok"})"};
}

int Service::bind() {
    auto& server = http_->server;
    if (config_.port == 0) {
        http_->port = server.bind_to_any_port(config_.host);
    } else if (server.bind_to_port(config_.host, config_.port)) {
        http_->port = config_.port;
    } else {
        http_->port = -1;
    }
    if (http_->port < 0) {
        throw Error("cannot listen on " + config_.host + ":" + std::to_string(config_.port));
    }
    return http_->port;
}

void Service::run() {
    http_->server.listen_after_bind();
}

void Service::wait_until_running() const {
    http_->server.wait_until_ready();
}

void Service::stop() {
    if (http_) {
        http_->server.stop();
    }
}

void serve(const ServiceConfig& config) {
    config.validate();
    Service service(config);
    const int port = service.bind();
    spdlog::info("listening on {}:{}", config.host, port);

    g_stop_requested.store(false);
    auto previous_int = std::signal(SIGINT, on_termination_signal);
    auto previous_term = std::signal(SIGTERM, on_termination_signal);
    auto restore_signals = [&] {
        std::signal(SIGINT, previous_int);
        std::signal(SIGTERM, previous_term);
    };

    std::thread listener([&service] { service.run(); });
    service.wait_until_running();
    try {
        service.load();
    } catch (...) {
        service.stop();
        listener.join();
        restore_signals();
        throw;
    }
    spdlog::info("index '{}' loaded, ready", config.index_path.string());

    while (!g_stop_requested.load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    spdlog::info("shutting down");
    service.stop();
    listener.join();
    restore_signals();
}

} // namespace asksport
