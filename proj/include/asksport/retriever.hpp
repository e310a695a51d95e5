#pragma once

#include "asksport/index.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asksport {

inline constexpr std::size_t kDefaultRetrievedDocs = 10;

struct RetrievedDocument {
    std::string doc_id;
    std::string title;
    std::string url;
    std::string body;
    double score = 0.0;
    std::size_t rank = 0;  // 1-based

    bool operator==(const RetrievedDocument&) const = default;
};

/// Okapi BM25 of one document for a bag of query terms. Duplicate terms count
/// once; terms outside the vocabulary contribute nothing.
/// Throws UnknownDocumentError if doc_id is not in the index.
double bm25_score(const Index& index, const IndexParams& params, std::span<const std::string> query_terms,
                  std::string_view doc_id);

/// Top-k documents for the question's content terms, by score descending and
/// doc_id ascending. Only documents with a positive score are returned.
std::vector<RetrievedDocument> retrieve(const Index& index, const IndexParams& params, std::string_view question,
                                        std::size_t k = kDefaultRetrievedDocs);

/// Same as retrieve() for an already extracted term list.
std::vector<RetrievedDocument> retrieve_terms(const Index& index, const IndexParams& params,
                                              std::span<const std::string> query_terms,
                                              std::size_t k = kDefaultRetrievedDocs);

} // namespace asksport
