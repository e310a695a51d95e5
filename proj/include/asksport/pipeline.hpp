#pragma once

#include "asksport/index.hpp"
#include "asksport/reader.hpp"
#include "asksport/remote_reader.hpp"
#include "asksport/retriever.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asksport {

/// Shown instead of answers when none clears the reader's threshold.
inline constexpr std::string_view kNoAnswerMessage = "We do not have an answer for your question";

inline constexpr std::size_t kDefaultAnswers = 3;

struct AnswerResult {
    std::string answer;
    double score = 0.0;
    std::string document_title;
    std::string url;
    std::string doc_id;
    std::size_t char_start = 0;
    std::size_t char_end = 0;

    bool operator==(const AnswerResult&) const = default;
};

struct AskResponse {
    std::string question;
    std::vector<AnswerResult> answers;  // score descending, at most n_answers
    std::string message;                // empty, or kNoAnswerMessage when answers is empty
    double elapsed_ms = 0.0;
    bool degraded = false;              // remote reader failed, baseline answered instead
    std::vector<std::string> retrieved; // doc ids in rank order; not serialised
};

enum class ReaderMode { baseline, remote, remote_with_baseline_fallback };

std::string_view to_string(ReaderMode mode);
/// Throws InputError for an unknown name.
ReaderMode parse_reader_mode(std::string_view name);

struct DocRef {
    std::string title;
    std::string url;
};

using DocLookup = std::function<std::optional<DocRef>(std::string_view doc_id)>;

DocLookup index_lookup(const Index& index);

/// Merges spans from several documents: one span per normalize_answer(text)
/// (highest confidence, then smaller doc_id, then smaller char_start), sorted
/// by score descending then normalised text, truncated to n.
/// Throws UnknownDocumentError if a span's document cannot be looked up.
std::vector<AnswerResult> aggregate_answers(std::span<const AnswerSpan> spans, const DocLookup& lookup,
                                            std::size_t n = kDefaultAnswers);

struct AskOptions {
    ReaderMode reader_mode = ReaderMode::baseline;
    std::size_t k_docs = kDefaultRetrievedDocs;
    std::size_t n_answers = kDefaultAnswers;
    std::optional<IndexParams> bm25;  // unset: the parameters stored in the index
    ReaderParams reader;
    RemoteReaderConfig remote;
    std::size_t remote_top_k = 10;
};

/// Question -> BM25 top k_docs -> reader -> n_answers best answers, or the
/// fallback message. In remote mode a reader failure propagates; in
/// remote_with_baseline_fallback mode the baseline reader answers and the
/// response is marked degraded.
AskResponse ask(const Index& index, std::string_view question, const AskOptions& options = {});

nlohmann::ordered_json to_json(const AskResponse& response);

} // namespace asksport
