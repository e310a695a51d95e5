#include "asksport/remote_reader.hpp"

#include "asksport/error.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <unordered_map>

namespace asksport {

using nlohmann::json;

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

Endpoint split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos || url.compare(0, scheme_end, "http") != 0) {
        throw ReaderUnavailableError("remote reader URL must start with http://: '" + url + "'");
    }
    const auto slash = url.find('/', scheme_end + 3);
    Endpoint e;
    e.origin = url.substr(0, slash);
    std::string prefix = slash == std::string::npos ? "" : url.substr(slash);
    while (!prefix.empty() && prefix.back() == '/') {
        prefix.pop_back();
    }
    e.path = prefix + "/read";
    return e;
}

} // namespace

json make_read_request(std::string_view question, std::span<const RetrievedDocument> docs, std::size_t top_k) {
    json contexts = json::array();
    for (const auto& d : docs) {
        contexts.push_back({{"doc_id", d.doc_id}, {"title", d.title}, {"url", d.url}, {"text", d.body}});
    }
    return {{"question", question}, {"top_k", top_k}, {"contexts", std::move(contexts)}};
}

std::vector<AnswerSpan> parse_read_response(std::string_view body, std::span<const RetrievedDocument> docs) {
    const json response = json::parse(body, nullptr, false);
    if (response.is_discarded() || !response.is_object()) {
        throw ProtocolError("remote reader response is not a JSON object");
    }
    const auto it = response.find("spans");
    if (it == response.end() || !it->is_array()) {
        throw ProtocolError("remote reader response lacks a \"spans\" array");
    }

    std::unordered_map<std::string_view, std::string_view> bodies;
    for (const auto& d : docs) {
        bodies.emplace(d.doc_id, d.body);
    }

    std::vector<AnswerSpan> spans;
    std::size_t position = 0;
    for (const auto& s : *it) {
        const auto index = position++;
        auto drop = [&](const char* why) { spdlog::warn("remote reader span {} dropped: {}", index, why); };
        if (!s.is_object()) {
            drop("not an object");
            continue;
        }
        const auto doc_id = s.find("doc_id");
        const auto text = s.find("text");
        const auto start = s.find("char_start");
        const auto end = s.find("char_end");
        const auto score = s.find("score");
        if (doc_id == s.end() || !doc_id->is_string() || text == s.end() || !text->is_string() ||
            start == s.end() || !start->is_number_unsigned() || end == s.end() || !end->is_number_unsigned() ||
            score == s.end() || !score->is_number()) {
            drop("missing or mistyped field");
            continue;
        }
        AnswerSpan span{text->get<std::string>(), doc_id->get<std::string>(), start->get<std::size_t>(),
                        end->get<std::size_t>(), score->get<double>()};
        const auto found = bodies.find(span.doc_id);
        if (found == bodies.end()) {
            drop("unknown doc_id");
            continue;
        }
        const auto doc_body = found->second;
        if (span.text.empty() || span.char_start >= span.char_end || span.char_end > doc_body.size() ||
            doc_body.substr(span.char_start, span.char_end - span.char_start) != span.text) {
            drop("offsets do not match text");
            continue;
        }
        if (!std::isfinite(span.confidence) || span.confidence < 0.0 || span.confidence > 1.0) {
            drop("score outside [0, 1]");
            continue;
        }
        spans.push_back(std::move(span));
    }
    return spans;
}

std::vector<AnswerSpan> read_remote(const RemoteReaderConfig& config, std::string_view question,
                                    std::span<const RetrievedDocument> docs, std::size_t top_k) {
    const auto endpoint = split_url(config.url);
    httplib::Client client(endpoint.origin);
    const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());

    const auto request = make_read_request(question, docs, top_k).dump(-1, ' ', false, json::error_handler_t::replace);
    const auto result = client.Post(endpoint.path, request, "application/json");
    if (!result) {
        throw ReaderUnavailableError("remote reader at " + config.url + " unreachable: " +
                                     httplib::to_string(result.error()));
    }
    if (result->status < 200 || result->status >= 300) {
        throw ReaderUnavailableError("remote reader at " + config.url + " answered HTTP " +
                                     std::to_string(result->status));
    }
    return parse_read_response(result->body, docs);
}

} // namespace asksport
