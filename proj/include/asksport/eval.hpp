#pragma once

#include "asksport/corpus.hpp"
#include "asksport/index.hpp"
#include "asksport/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asksport {

/// 1 if the normalised strings are equal, else 0.
int exact_match(std::string_view prediction, std::string_view gold);

/// Harmonic mean of token precision and recall over normalised token
/// multisets. Both sides empty -> 1; exactly one empty -> 0.
double token_f1(std::string_view prediction, std::string_view gold);

struct QuestionOutcome {
    std::string question;
    std::string gold;
    std::string predicted;   // top-1 answer, empty on fallback
    double score = 0.0;      // reader confidence of `predicted`
    double em = 0.0;
    double f1 = 0.0;
    double hit = 0.0;        // gold document among the top-k retrieved
    double em_any = 0.0;     // best over all returned answers
    double f1_any = 0.0;
};

struct EvalReport {
    std::size_t n_questions = 0;
    double exact_match = 0.0;
    double f1 = 0.0;
    double hit_at_k = 0.0;
    std::size_t k = 0;
    double exact_match_any = 0.0;
    double f1_any = 0.0;
    std::vector<QuestionOutcome> per_question;  // input order
};

/// Runs ask() for each pair with k_docs = k and scores the top-1 prediction.
/// Pairs should already carry gold_doc_id (see resolve_gold_docs).
/// Throws InputError if `pairs` is empty.
EvalReport evaluate(const Index& index, std::span<const QAPair> pairs, std::size_t k,
                    const AskOptions& options = {});

nlohmann::ordered_json to_json(const EvalReport& report, bool any_of_answers = false);

/// Case / question / answer / score table followed by the aggregate metrics.
std::string format_report(const EvalReport& report, bool any_of_answers = false);

} // namespace asksport
