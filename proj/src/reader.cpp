#include "asksport/reader.hpp"

#include "asksport/error.hpp"
#include "asksport/textproc.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace asksport {

void ReaderParams::validate() const {
    if (max_span_tokens < 1 || spans_per_doc < 1 || !(overlap_penalty >= 0.0) || !(length_penalty >= 0.0) ||
        !std::isfinite(min_confidence)) {
        throw DomainError("reader parameters out of range");
    }
}

IdfLookup index_idf(const Index& index) {
    return [&index](std::string_view term) { return index.term_idf(term); };
}

namespace {

struct Candidate {
    std::size_t first;  // token index
    std::size_t length; // tokens
    double confidence;
};

} // namespace

std::vector<AnswerSpan> read_baseline(std::string_view question, std::string_view doc_id, std::string_view body,
                                      const IdfLookup& idf, const ReaderParams& params) {
    params.validate();
    const auto terms = content_terms(question);
    if (terms.empty()) {
        return {};
    }
    std::vector<double> weights;
    weights.reserve(terms.size());
    double total = 0.0;
    for (const auto& t : terms) {
        weights.push_back(idf(t));
        total += weights.back();
    }
    if (!(total > 0.0)) {
        return {};
    }

    const auto tokens = tokenize(body);
    const std::size_t n = tokens.size();
    const std::size_t nq = terms.size();

    // occurrences[q][p] = occurrences of term q among tokens [0, p).
    std::vector<std::vector<std::uint32_t>> occurrences(nq, std::vector<std::uint32_t>(n + 1, 0));
    std::vector<char> stopword(n, 0);
    for (std::size_t p = 0; p < n; ++p) {
        stopword[p] = is_question_stopword(tokens[p].text);
        for (std::size_t q = 0; q < nq; ++q) {
            occurrences[q][p + 1] = occurrences[q][p] + (tokens[p].text == terms[q] ? 1 : 0);
        }
    }
    auto weight_in = [&](std::size_t lo, std::size_t hi) {  // tokens [lo, hi]
        double sum = 0.0;
        for (std::size_t q = 0; q < nq; ++q) {
            if (occurrences[q][hi + 1] > occurrences[q][lo]) {
                sum += weights[q];
            }
        }
        return sum;
    };

    const auto radius = params.window_radius;
    std::vector<Candidate> candidates;
    for (std::size_t first = 0; first < n; ++first) {
        if (stopword[first]) {
            continue;
        }
        for (std::size_t length = 1; length <= params.max_span_tokens && first + length <= n; ++length) {
            const std::size_t last = first + length - 1;
            if (stopword[last]) {
                continue;
            }
            const std::size_t lo = first >= radius ? first - radius : 0;
            const std::size_t hi = std::min(n - 1, last + radius);
            const double coverage = weight_in(lo, hi);
            const double overlap = weight_in(first, last);
            const double raw = (coverage - params.overlap_penalty * overlap) / total -
                               params.length_penalty * static_cast<double>(length - 1);
            const double confidence = std::clamp(raw, 0.0, 1.0);
            if (confidence > params.min_confidence) {
                candidates.push_back({first, length, confidence});
            }
        }
    }

    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.confidence != b.confidence) {
            return a.confidence > b.confidence;
        }
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return a.length < b.length;
    });

    std::vector<AnswerSpan> spans;
    std::unordered_set<std::string> seen;
    for (const auto& c : candidates) {
        if (spans.size() == params.spans_per_doc) {
            break;
        }
        const auto start = tokens[c.first].char_start;
        const auto end = tokens[c.first + c.length - 1].char_end;
        std::string text(body.substr(start, end - start));
        if (!seen.insert(normalize_answer(text)).second) {
            continue;
        }
        spans.push_back(AnswerSpan{std::move(text), std::string(doc_id), start, end, c.confidence});
    }
    return spans;
}

} // namespace asksport
