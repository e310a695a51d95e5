#pragma once

// Brute-force reference implementations used by the unit and acceptance
// tests. They evaluate the scoring formulas directly from document text and
// share no code with the index, retriever or reader.

#include "asksport/corpus.hpp"
#include "asksport/reader.hpp"
#include "asksport/textproc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace asksport::oracle {

struct ScoredDoc {
    std::string doc_id;
    double score;
};

struct Bm25Stats {
    std::size_t n_docs = 0;
    double avgdl = 0.0;
    std::map<std::string, std::size_t> df;
    std::map<std::string, std::map<std::string, std::size_t>> tf;  // doc_id -> term -> count
    std::map<std::string, std::size_t> dl;
};

inline Bm25Stats bm25_stats(const std::vector<Document>& corpus) {
    Bm25Stats s;
    s.n_docs = corpus.size();
    std::size_t total = 0;
    for (const auto& d : corpus) {
        auto& counts = s.tf[d.doc_id];
        std::size_t len = 0;
        for (const auto& t : tokenize(d.body)) {
            ++counts[t.text];
            ++len;
        }
        s.dl[d.doc_id] = len;
        total += len;
        for (const auto& [term, c] : counts) {
            ++s.df[term];
        }
    }
    s.avgdl = static_cast<double>(total) / static_cast<double>(s.n_docs);
    return s;
}

inline double bm25(const Bm25Stats& s, const std::vector<std::string>& query, const std::string& doc_id,
                   double k1 = 1.2, double b = 0.75) {
    std::set<std::string> distinct(query.begin(), query.end());
    double score = 0.0;
    const auto& counts = s.tf.at(doc_id);
    const double dl = static_cast<double>(s.dl.at(doc_id));
    for (const auto& term : distinct) {
        auto it = counts.find(term);
        if (it == counts.end()) {
            continue;
        }
        const double n = static_cast<double>(s.n_docs);
        const double df = static_cast<double>(s.df.at(term));
        const double w = std::log(1.0 + (n - df + 0.5) / (df + 0.5));
        const double tf = static_cast<double>(it->second);
        score += w * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * dl / s.avgdl));
    }
    return score;
}

/// Scores every document and sorts by (score desc, doc_id asc); zero scores dropped.
inline std::vector<ScoredDoc> rank_all(const std::vector<Document>& corpus, const std::vector<std::string>& query,
                                       std::size_t k, double k1 = 1.2, double b = 0.75) {
    const auto s = bm25_stats(corpus);
    std::vector<ScoredDoc> all;
    for (const auto& d : corpus) {
        const double v = bm25(s, query, d.doc_id, k1, b);
        if (v > 0.0) {
            all.push_back({d.doc_id, v});
        }
    }
    std::sort(all.begin(), all.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
        return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
    });
    if (all.size() > k) {
        all.resize(k);
    }
    return all;
}

/// Exhaustive span enumeration for the baseline reader's scoring rule.
inline std::vector<AnswerSpan> read_spans(const std::string& question, const std::string& doc_id,
                                          const std::string& body, const IdfLookup& idf,
                                          const ReaderParams& p = {}) {
    const auto q = content_terms(question);
    if (q.empty()) {
        return {};
    }
    double total = 0.0;
    for (const auto& t : q) {
        total += idf(t);
    }
    const auto tokens = tokenize(body);
    const long n = static_cast<long>(tokens.size());

    auto weight_of = [&](long lo, long hi) {
        double sum = 0.0;
        for (const auto& t : q) {
            bool present = false;
            for (long i = lo; i <= hi; ++i) {
                if (tokens[i].text == t) {
                    present = true;
                    break;
                }
            }
            if (present) {
                sum += idf(t);
            }
        }
        return sum;
    };

    struct Cand {
        AnswerSpan span;
        long length;
    };
    std::vector<Cand> cands;
    for (long i = 0; i < n; ++i) {
        for (long len = 1; len <= static_cast<long>(p.max_span_tokens) && i + len <= n; ++len) {
            const long j = i + len - 1;
            if (is_question_stopword(tokens[i].text) || is_question_stopword(tokens[j].text)) {
                continue;
            }
            const long r = static_cast<long>(p.window_radius);
            const double cov = weight_of(std::max(0L, i - r), std::min(n - 1, j + r));
            const double ov = weight_of(i, j);
            double raw = (cov - p.overlap_penalty * ov) / total - p.length_penalty * static_cast<double>(len - 1);
            raw = std::min(1.0, std::max(0.0, raw));
            if (raw > p.min_confidence) {
                const auto s = tokens[i].char_start;
                const auto e = tokens[j].char_end;
                cands.push_back({AnswerSpan{body.substr(s, e - s), doc_id, s, e, raw}, len});
            }
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.span.confidence != b.span.confidence) return a.span.confidence > b.span.confidence;
        if (a.span.char_start != b.span.char_start) return a.span.char_start < b.span.char_start;
        return a.length < b.length;
    });
    std::vector<AnswerSpan> out;
    std::set<std::string> seen;
    for (auto& c : cands) {
        if (out.size() == p.spans_per_doc) break;
        if (seen.insert(normalize_answer(c.span.text)).second) out.push_back(c.span);
    }
    return out;
}

} // namespace asksport::oracle
