#include "asksport/pipeline.hpp"

#include "asksport/error.hpp"
#include "asksport/textproc.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <map>

namespace asksport {

std::string_view to_string(ReaderMode mode) {
    switch (mode) {
    case ReaderMode::baseline:
        return "baseline";
    case ReaderMode::remote:
        return "remote";
    case ReaderMode::remote_with_baseline_fallback:
        return "remote_with_baseline_fallback";
    }
    return "baseline";
}

ReaderMode parse_reader_mode(std::string_view name) {
    for (auto mode : {ReaderMode::baseline, ReaderMode::remote, ReaderMode::remote_with_baseline_fallback}) {
        if (to_string(mode) == name) {
            return mode;
        }
    }
    throw InputError("unknown reader mode '" + std::string(name) +
                     "' (expected baseline, remote or remote_with_baseline_fallback)");
}

DocLookup index_lookup(const Index& index) {
    return [&index](std::string_view doc_id) -> std::optional<DocRef> {
        const auto ordinal = index.ordinal_of(doc_id);
        if (!ordinal) {
            return std::nullopt;
        }
        const auto& doc = index.doc(*ordinal).doc;
        return DocRef{doc.title, doc.url};
    };
}

std::vector<AnswerResult> aggregate_answers(std::span<const AnswerSpan> spans, const DocLookup& lookup,
                                            std::size_t n) {
    struct Best {
        const AnswerSpan* span;
    };
    std::map<std::string, Best> best;
    for (const auto& span : spans) {
        auto key = normalize_answer(span.text);
        auto [it, inserted] = best.try_emplace(std::move(key), Best{&span});
        if (inserted) {
            continue;
        }
        const auto* current = it->second.span;
        const bool better =
            span.confidence != current->confidence ? span.confidence > current->confidence
            : span.doc_id != current->doc_id       ? span.doc_id < current->doc_id
                                                   : span.char_start < current->char_start;
        if (better) {
            it->second.span = &span;
        }
    }

    std::vector<std::pair<const std::string*, const AnswerSpan*>> ranked;
    ranked.reserve(best.size());
    for (const auto& [key, b] : best) {
        ranked.emplace_back(&key, b.span);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second->confidence != b.second->confidence) {
            return a.second->confidence > b.second->confidence;
        }
        return *a.first < *b.first;
    });
    if (ranked.size() > n) {
        ranked.resize(n);
    }

    std::vector<AnswerResult> results;
    results.reserve(ranked.size());
    for (const auto& [key, span] : ranked) {
        const auto ref = lookup(span->doc_id);
        if (!ref) {
            throw UnknownDocumentError(span->doc_id);
        }
        results.push_back(AnswerResult{span->text, span->confidence, ref->title, ref->url, span->doc_id,
                                       span->char_start, span->char_end});
    }
    return results;
}

namespace {

std::vector<AnswerSpan> read_with_baseline(const Index& index, std::string_view question,
                                           std::span<const RetrievedDocument> docs, const ReaderParams& params) {
    const auto idf = index_idf(index);
    std::vector<AnswerSpan> spans;
    for (const auto& doc : docs) {
        auto found = read_baseline(question, doc.doc_id, doc.body, idf, params);
        spans.insert(spans.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
    }
    return spans;
}

} // namespace

AskResponse ask(const Index& index, std::string_view question, const AskOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    if (options.k_docs == 0 || options.n_answers == 0) {
        throw DomainError("ask requires k_docs >= 1 and n_answers >= 1");
    }

    AskResponse response;
    response.question = std::string(question);

    const auto docs = retrieve(index, options.bm25.value_or(index.params()), question, options.k_docs);
    for (const auto& d : docs) {
        response.retrieved.push_back(d.doc_id);
    }

    if (!docs.empty()) {
        std::vector<AnswerSpan> spans;
        switch (options.reader_mode) {
        case ReaderMode::baseline:
            spans = read_with_baseline(index, question, docs, options.reader);
            break;
        case ReaderMode::remote:
            spans = read_remote(options.remote, question, docs, options.remote_top_k);
            break;
        case ReaderMode::remote_with_baseline_fallback:
            try {
                spans = read_remote(options.remote, question, docs, options.remote_top_k);
            } catch (const ReaderUnavailableError& e) {
                spdlog::warn("{}; answering with the baseline reader", e.what());
                spans = read_with_baseline(index, question, docs, options.reader);
                response.degraded = true;
            }
            break;
        }
        response.answers = aggregate_answers(spans, index_lookup(index), options.n_answers);
    }

    if (response.answers.empty()) {
        response.message = std::string(kNoAnswerMessage);
    }
    response.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return response;
}

nlohmann::ordered_json to_json(const AskResponse& response) {
    nlohmann::ordered_json answers = nlohmann::ordered_json::array();
    for (const auto& a : response.answers) {
        nlohmann::ordered_json item;
        item["answer"] = a.answer;
        item["score"] = a.score;
        item["document_title"] = a.document_title;
        item["url"] = a.url;
        item["doc_id"] = a.doc_id;
        item["char_start"] = a.char_start;
        item["char_end"] = a.char_end;
        answers.push_back(std::move(item));
    }
    nlohmann::ordered_json out;
    out["question"] = response.question;
    out["answers"] = std::move(answers);
    out["message"] = response.message;
    out["elapsed_ms"] = response.elapsed_ms;
    if (response.degraded) {
        out["degraded"] = true;
    }
    return out;
}

} // namespace asksport
