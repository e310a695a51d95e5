#include "asksport/retriever.hpp"

#include "asksport/error.hpp"
#include "asksport/textproc.hpp"

#include <algorithm>
#include <set>

namespace asksport {

namespace {

std::vector<const std::string*> distinct_terms(std::span<const std::string> terms) {
    std::vector<const std::string*> out;
    std::set<std::string_view> seen;
    for (const auto& t : terms) {
        if (seen.insert(t).second) {
            out.push_back(&t);
        }
    }
    return out;
}

struct TermWeight {
    double idf;
    double k1;
    double b;
    double avgdl;

    double operator()(std::uint32_t tf, std::size_t dl) const {
        const double f = tf;
        const double norm = avgdl > 0.0 ? static_cast<double>(dl) / avgdl : 0.0;
        return idf * f * (k1 + 1.0) / (f + k1 * (1.0 - b + b * norm));
    }
};

} // namespace

double bm25_score(const Index& index, const IndexParams& params, std::span<const std::string> query_terms,
                  std::string_view doc_id) {
    params.validate();
    const auto ordinal = index.ordinal_of(doc_id);
    if (!ordinal) {
        throw UnknownDocumentError(std::string(doc_id));
    }
    const auto dl = index.doc(*ordinal).length;
    double score = 0.0;
    for (const auto* term : distinct_terms(query_terms)) {
        const auto* entry = index.find_term(*term);
        if (!entry) {
            continue;
        }
        const auto it = std::lower_bound(entry->postings.begin(), entry->postings.end(), *ordinal,
                                         [](const Posting& p, std::size_t o) { return p.doc < o; });
        if (it == entry->postings.end() || it->doc != *ordinal) {
            continue;
        }
        const TermWeight weight{idf(entry->df, index.n_docs()), params.k1, params.b, index.avgdl()};
        score += weight(it->tf, dl);
    }
    return score;
}

std::vector<RetrievedDocument> retrieve_terms(const Index& index, const IndexParams& params,
                                              std::span<const std::string> query_terms, std::size_t k) {
    params.validate();
    if (k == 0) {
        throw DomainError("retrieve requires k >= 1");
    }

    // Term-at-a-time accumulation over the postings of each distinct term.
    std::vector<double> scores(index.n_docs(), 0.0);
    std::vector<std::uint32_t> touched;
    for (const auto* term : distinct_terms(query_terms)) {
        const auto* entry = index.find_term(*term);
        if (!entry) {
            continue;
        }
        const TermWeight weight{idf(entry->df, index.n_docs()), params.k1, params.b, index.avgdl()};
        for (const auto& p : entry->postings) {
            if (scores[p.doc] == 0.0) {
                touched.push_back(p.doc);
            }
            scores[p.doc] += weight(p.tf, index.doc(p.doc).length);
        }
    }

    std::vector<std::uint32_t> candidates;
    candidates.reserve(touched.size());
    for (const auto ordinal : touched) {
        if (scores[ordinal] > 0.0) {
            candidates.push_back(ordinal);
        }
    }
    // Ordinals follow doc_id order, so the ordinal is the tie-break.
    auto better = [&](std::uint32_t a, std::uint32_t b) {
        return scores[a] != scores[b] ? scores[a] > scores[b] : a < b;
    };
    const auto n = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n), candidates.end(),
                      better);

    std::vector<RetrievedDocument> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& doc = index.doc(candidates[i]).doc;
        out.push_back(RetrievedDocument{doc.doc_id, doc.title, doc.url, doc.body, scores[candidates[i]], i + 1});
    }
    return out;
}

std::vector<RetrievedDocument> retrieve(const Index& index, const IndexParams& params, std::string_view question,
                                        std::size_t k) {
    const auto terms = content_terms(question);
    return retrieve_terms(index, params, terms, k);
}

} // namespace asksport
