#pragma once

// Scripted stand-in for the neural reader service, bound to an ephemeral
// loopback port for the lifetime of the object.

#include "asksport/corpus.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace asksport::testing {

struct ScriptedAnswer {
    std::string text;
    double score;
};

class StubReader {
public:
    using Handler = std::function<void(const nlohmann::json& request, httplib::Response& res)>;

    explicit StubReader(Handler handler) : handler_(std::move(handler)) {
        server_.Post("/read", [this](const httplib::Request& req, httplib::Response& res) {
            nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
            {
                std::lock_guard lock(mutex_);
                requests_.push_back(body);
            }
            handler_(body, res);
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    /// Answers every request by locating each scripted text in the first
    /// context that contains it.
    explicit StubReader(std::vector<ScriptedAnswer> script)
        : StubReader([script = std::move(script)](const nlohmann::json& request, httplib::Response& res) {
              nlohmann::json spans = nlohmann::json::array();
              for (const auto& a : script) {
                  for (const auto& ctx : request.at("contexts")) {
                      const auto text = ctx.at("text").get<std::string>();
                      const auto pos = text.find(a.text);
                      if (pos == std::string::npos) continue;
                      spans.push_back({{"doc_id", ctx.at("doc_id")},
                                       {"text", a.text},
                                       {"char_start", pos},
                                       {"char_end", pos + a.text.size()},
                                       {"score", a.score}});
                      break;
                  }
              }
              res.set_content(nlohmann::json{{"spans", spans}}.dump(), "application/json");
          }) {}

    ~StubReader() {
        server_.stop();
        if (thread_.joinable()) thread_.join();
    }

    StubReader(const StubReader&) = delete;
    StubReader& operator=(const StubReader&) = delete;

    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

    std::vector<nlohmann::json> requests() const {
        std::lock_guard lock(mutex_);
        return requests_;
    }

private:
    Handler handler_;
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    mutable std::mutex mutex_;
    std::vector<nlohmann::json> requests_;
};

/// Answers and scores a neural reader gave for the rookie-of-the-year
/// question; the stub replays them.
inline const std::string kRookieQuestion = "Which player was eventually called the Rookie of the Year?";

inline std::vector<ScriptedAnswer> rookie_script() {
    return {{"Lastimosa", 0.7945}, {"James", 0.7198}, {"Glenn Robinson", 0.6899}};
}

inline std::vector<Document> rookie_corpus() {
    return {
        Document{"r1", "Jojo Lastimosa", "https://basketball.fandom.com/wiki/Jojo_Lastimosa",
                 "Jojo Lastimosa was eventually called the Rookie of the Year after his first PBA season.",
                 "basketball"},
        Document{"r2", "LeBron James", "https://basketball.fandom.com/wiki/LeBron_James",
                 "LeBron James won the NBA Rookie of the Year award in 2004 with Cleveland.", "basketball"},
        Document{"r3", "Glenn Robinson", "https://basketball.fandom.com/wiki/Glenn_Robinson",
                 "Glenn Robinson was the first pick and a Rookie of the Year candidate for Milwaukee.",
                 "basketball"},
        Document{"r4", "Court dimensions", "https://basketball.fandom.com/wiki/Basketball_court",
                 "A regulation court is 94 feet long and 50 feet wide.", "basketball"},
    };
}

} // namespace asksport::testing
