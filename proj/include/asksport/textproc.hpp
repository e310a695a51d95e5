#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace asksport {

/// A lowercase term together with the byte range [char_start, char_end) it
/// occupies in the UTF-8 source text.
struct Token {
    std::string text;
    std::size_t char_start = 0;
    std::size_t char_end = 0;

    bool operator==(const Token&) const = default;
};

struct TermStats {
    std::string term;
    std::size_t df = 0;
    double idf = 0.0;
};

/// Words removed from questions (never from documents) before retrieval and
/// span scoring. Sorted, lowercase.
inline constexpr std::array<std::string_view, 40> kQuestionStopwords = {
    "a",    "an",   "and",   "are",  "as",   "at",   "be",   "by",    "did",   "do",
    "does", "for",  "from",  "had",  "has",  "have", "how",  "in",    "is",    "it",
    "its",  "many", "much",  "of",   "on",   "or",   "that", "the",   "to",    "was",
    "were", "what", "when",  "where", "which", "who", "whom", "why",  "will",  "with",
};

bool is_question_stopword(std::string_view term) noexcept;

/// Splits text into maximal runs of letters/digits, lowercased. Offsets are
/// byte offsets into `text`. Invalid UTF-8 bytes act as separators.
std::vector<Token> tokenize(std::string_view text);

/// Lowercases letters in a UTF-8 string; other bytes pass through unchanged.
std::string to_lower(std::string_view text);

/// tokenize(question) without stopwords, deduplicated in first-occurrence order.
std::vector<std::string> content_terms(std::string_view question);

/// Smoothed BM25 inverse document frequency ln(1 + (n - df + 0.5) / (df + 0.5)).
/// Throws DomainError unless 1 <= df <= n_docs.
double idf(std::size_t df, std::size_t n_docs);

/// IDF for a term that occurs in no document (df treated as 0).
double idf_out_of_vocabulary(std::size_t n_docs);

/// Lowercase, strip punctuation, drop the articles a/an/the, collapse whitespace.
std::string normalize_answer(std::string_view text);

/// Collapses whitespace runs to a single space and trims both ends.
std::string normalize_whitespace(std::string_view text);

} // namespace asksport
