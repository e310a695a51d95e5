#pragma once

#include "asksport/reader.hpp"
#include "asksport/retriever.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asksport {

/// Where the neural reader listens, e.g. "http://127.0.0.1:8000" or
/// "http://host/prefix". Requests go to <url>/read.
struct RemoteReaderConfig {
    std::string url;
    std::chrono::milliseconds timeout{30000};
};

/// {"question", "top_k", "contexts": [{"doc_id", "title", "url", "text"}]}
nlohmann::json make_read_request(std::string_view question, std::span<const RetrievedDocument> docs,
                                 std::size_t top_k);

/// Parses a {"spans": [...]} body and keeps only spans that slice exactly to
/// their text in one of `docs` and carry a score in [0, 1]; others are dropped
/// with a warning. Throws ProtocolError if the body is not a JSON object with
/// a "spans" array.
std::vector<AnswerSpan> parse_read_response(std::string_view body, std::span<const RetrievedDocument> docs);

/// One POST to the remote reader. Safe to call from many threads at once.
/// Throws ReaderUnavailableError on connection failure, timeout or non-2xx
/// status, ProtocolError on a malformed body.
std::vector<AnswerSpan> read_remote(const RemoteReaderConfig& config, std::string_view question,
                                    std::span<const RetrievedDocument> docs, std::size_t top_k);

} // namespace asksport
