#include "asksport/eval.hpp"

#include "asksport/error.hpp"
#include "asksport/textproc.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace asksport {

namespace {

std::vector<std::string> split_words(const std::string& s) {
    std::vector<std::string> words;
    std::istringstream in(s);
    for (std::string w; in >> w;) {
        words.push_back(std::move(w));
    }
    return words;
}

std::string format_score(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

int exact_match(std::string_view prediction, std::string_view gold) {
    return normalize_answer(prediction) == normalize_answer(gold) ? 1 : 0;
}

double token_f1(std::string_view prediction, std::string_view gold) {
    const auto pred = split_words(normalize_answer(prediction));
    const auto ref = split_words(normalize_answer(gold));
    if (pred.empty() || ref.empty()) {
        return pred.empty() && ref.empty() ? 1.0 : 0.0;
    }
    std::map<std::string_view, std::size_t> counts;
    for (const auto& w : ref) {
        ++counts[w];
    }
    std::size_t common = 0;
    for (const auto& w : pred) {
        auto it = counts.find(w);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++common;
        }
    }
    // 2PR/(P+R) reduced to a single division.
    return 2.0 * static_cast<double>(common) / static_cast<double>(pred.size() + ref.size());
}

EvalReport evaluate(const Index& index, std::span<const QAPair> pairs, std::size_t k, const AskOptions& options) {
    if (pairs.empty()) {
        throw InputError("evaluation requires at least one question-answer pair");
    }
    AskOptions ask_options = options;
    ask_options.k_docs = k;

    EvalReport report;
    report.k = k;
    report.n_questions = pairs.size();
    for (const auto& pair : pairs) {
        const auto response = ask(index, pair.question, ask_options);
        QuestionOutcome outcome;
        outcome.question = pair.question;
        outcome.gold = pair.gold_answer;
        if (!response.answers.empty()) {
            outcome.predicted = response.answers.front().answer;
            outcome.score = response.answers.front().score;
        }
        outcome.em = exact_match(outcome.predicted, pair.gold_answer);
        outcome.f1 = token_f1(outcome.predicted, pair.gold_answer);
        outcome.em_any = outcome.em;
        outcome.f1_any = outcome.f1;
        for (const auto& a : response.answers) {
            outcome.em_any = std::max<double>(outcome.em_any, exact_match(a.answer, pair.gold_answer));
            outcome.f1_any = std::max(outcome.f1_any, token_f1(a.answer, pair.gold_answer));
        }
        outcome.hit = !pair.gold_doc_id.empty() &&
                              std::find(response.retrieved.begin(), response.retrieved.end(), pair.gold_doc_id) !=
                                  response.retrieved.end()
                          ? 1.0
                          : 0.0;
        report.per_question.push_back(std::move(outcome));
    }

    const auto n = static_cast<double>(report.n_questions);
    for (const auto& q : report.per_question) {
        report.exact_match += q.em;
        report.f1 += q.f1;
        report.hit_at_k += q.hit;
        report.exact_match_any += q.em_any;
        report.f1_any += q.f1_any;
    }
    report.exact_match /= n;
    report.f1 /= n;
    report.hit_at_k /= n;
    report.exact_match_any /= n;
    report.f1_any /= n;
    return report;
}

nlohmann::ordered_json to_json(const EvalReport& report, bool any_of_answers) {
    using nlohmann::ordered_json;
    ordered_json per_question = ordered_json::array();
    for (const auto& q : report.per_question) {
        ordered_json item;
        item["question"] = q.question;
        item["gold"] = q.gold;
        item["predicted"] = q.predicted;
        item["score"] = q.score;
        item["em"] = q.em;
        item["f1"] = q.f1;
        item["hit"] = q.hit;
        if (any_of_answers) {
            item["em_any"] = q.em_any;
            item["f1_any"] = q.f1_any;
        }
        per_question.push_back(std::move(item));
    }
    ordered_json out;
    out["n_questions"] = report.n_questions;
    out["exact_match"] = report.exact_match;
    out["f1"] = report.f1;
    out["hit_at_k"] = report.hit_at_k;
    out["k"] = report.k;
    if (any_of_answers) {
        out["exact_match_any"] = report.exact_match_any;
        out["f1_any"] = report.f1_any;
    }
    out["per_question"] = std::move(per_question);
    return out;
}

std::string format_report(const EvalReport& report, bool any_of_answers) {
    std::ostringstream out;
    out << "Case\tQuestion\tAnswer\tScore\tGold\tEM\tF1\n";
    std::size_t n = 0;
    for (const auto& q : report.per_question) {
        out << ++n << '\t' << q.question << '\t' << (q.predicted.empty() ? "-" : q.predicted) << '\t'
            << format_score(q.score) << '\t' << q.gold << '\t' << q.em << '\t' << format_score(q.f1) << '\n';
    }
    out << "\nquestions: " << report.n_questions << '\n'
        << "exact match: " << format_score(report.exact_match) << '\n'
        << "F1: " << format_score(report.f1) << '\n'
        << "hit@" << report.k << ": " << format_score(report.hit_at_k) << '\n';
    if (any_of_answers) {
        out << "exact match (any answer): " << format_score(report.exact_match_any) << '\n'
            << "F1 (any answer): " << format_score(report.f1_any) << '\n';
    }
    return out.str();
}

} // namespace asksport
