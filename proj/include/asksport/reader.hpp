#pragma once

#include "asksport/corpus.hpp"
#include "asksport/index.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace asksport {

/// A verbatim slice of a document body with the reader's confidence in [0, 1].
struct AnswerSpan {
    std::string text;
    std::string doc_id;
    std::size_t char_start = 0;
    std::size_t char_end = 0;
    double confidence = 0.0;

    bool operator==(const AnswerSpan&) const = default;
};

struct ReaderParams {
    std::size_t max_span_tokens = 8;
    std::size_t window_radius = 30;  // tokens on each side of the span
    double overlap_penalty = 1.0;    // weight of question terms inside the span
    double length_penalty = 0.01;    // per token beyond the first
    std::size_t spans_per_doc = 3;
    double min_confidence = 0.0;     // exclusive

    /// Throws DomainError on out-of-range values.
    void validate() const;
};

/// Term weight provider for the baseline reader.
using IdfLookup = std::function<double(std::string_view term)>;

/// Index::term_idf bound to `index`. The index must outlive the lookup.
IdfLookup index_idf(const Index& index);

/// Deterministic lexical reader. Every run of 1..max_span_tokens tokens that
/// neither starts nor ends with a question stopword is a candidate. With Q the
/// question's content terms and W the span widened by window_radius tokens:
///
///   confidence = clamp((idf(Q in W) - overlap_penalty * idf(Q in span)) / idf(Q)
///                      - length_penalty * (tokens - 1), 0, 1)
///
/// where idf(S) sums the weights of the distinct content terms found in S.
/// Spans above min_confidence are ordered by confidence desc, start asc,
/// length asc, deduplicated on normalize_answer(text), and truncated to
/// spans_per_doc.
std::vector<AnswerSpan> read_baseline(std::string_view question, std::string_view doc_id, std::string_view body,
                                      const IdfLookup& idf, const ReaderParams& params = {});

inline std::vector<AnswerSpan> read_baseline(std::string_view question, const Document& doc, const IdfLookup& idf,
                                             const ReaderParams& params = {}) {
    return read_baseline(question, doc.doc_id, doc.body, idf, params);
}

} // namespace asksport
