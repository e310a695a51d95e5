#include "asksport/error.hpp"
#include "asksport/textproc.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace asksport;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    for (const auto& t : tokens) {
        out.push_back(t.text);
    }
    return out;
}

} // namespace

TEST_CASE("tokenize splits on non-alphanumerics and lowercases", "[textproc]") {
    CHECK(texts(tokenize("Rookie-of-the-Year (1994)")) ==
          std::vector<std::string>{"rookie", "of", "the", "year", "1994"});
    CHECK(tokenize("").empty());
    CHECK(tokenize(" ,.;-- ").empty());

    const auto tokens = tokenize("NBA Warriors");
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0] == Token{"nba", 0, 3});
    CHECK(tokens[1] == Token{"warriors", 4, 12});
}

TEST_CASE("tokenize handles non-ASCII letters and punctuation", "[textproc]") {
    // "Doncic" with caron, an em dash separator and a Cyrillic word.
    const std::string text = "Don\xC4\x8Di\xC4\x87\xE2\x80\x94\xD0\x9C\xD0\xB0\xD0\xB3\xD0\xB8\xD1\x8F won";
    const auto tokens = tokenize(text);
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0].text == "don\xC4\x8Di\xC4\x87");
    CHECK(tokens[1].text == "\xD0\xBC\xD0\xB0\xD0\xB3\xD0\xB8\xD1\x8F");
    CHECK(tokens[2].text == "won");
    CHECK(to_lower("\xC3\x89MILE") == "\xC3\xA9mile");
}

TEST_CASE("tokenize offsets slice back to the token text", "[textproc][property]") {
    std::mt19937_64 rng(7);
    const std::string alphabet = "aZ09 .,-'\"\xC3\xA9\xC3\x89\xE2\x80\x94\n\t";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<std::size_t> length(0, 60);
    for (int round = 0; round < 500; ++round) {
        std::string text;
        const auto n = length(rng);
        for (std::size_t i = 0; i < n; ++i) {
            text.push_back(alphabet[pick(rng)]);
        }
        std::size_t previous_end = 0;
        for (const auto& t : tokenize(text)) {
            REQUIRE(t.char_start < t.char_end);
            REQUIRE(t.char_start >= previous_end);
            REQUIRE(to_lower(std::string_view(text).substr(t.char_start, t.char_end - t.char_start)) == t.text);
            previous_end = t.char_end;
        }
    }
}

TEST_CASE("stopword list is sorted, lowercase and 40 long", "[textproc]") {
    CHECK(kQuestionStopwords.size() == 40);
    CHECK(std::is_sorted(kQuestionStopwords.begin(), kQuestionStopwords.end()));
    CHECK(is_question_stopword("whom"));
    CHECK_FALSE(is_question_stopword("warriors"));
}

TEST_CASE("content_terms drops question stopwords and duplicates", "[textproc]") {
    CHECK(content_terms("How many titles do the NBA Warriors have?") ==
          std::vector<std::string>{"titles", "nba", "warriors"});
    CHECK(content_terms("Who is considered the best basketball player in history?") ==
          std::vector<std::string>{"considered", "best", "basketball", "player", "history"});
    CHECK(content_terms("the of and").empty());
    CHECK(content_terms("Warriors warriors WARRIORS titles") == std::vector<std::string>{"warriors", "titles"});
}

TEST_CASE("idf follows the smoothed formula", "[textproc]") {
    CHECK_THAT(idf(2, 4), WithinAbs(std::log(2.0), 1e-12));
    CHECK_THAT(idf(2, 4), WithinAbs(0.6931, 1e-4));
    CHECK_THAT(idf(2, 3), WithinAbs(std::log(1.6), 1e-12));
    CHECK_THAT(idf(2, 3), WithinAbs(0.4700, 1e-4));
    CHECK(idf(10, 10) > 0.0);
    CHECK_THAT(idf(10, 10), WithinAbs(std::log(1.0 + 0.5 / 10.5), 1e-12));
    CHECK_THAT(idf_out_of_vocabulary(4), WithinAbs(std::log(1.0 + 4.5 / 0.5), 1e-12));

    CHECK_THROWS_AS(idf(0, 4), DomainError);
    CHECK_THROWS_AS(idf(5, 4), DomainError);
}

TEST_CASE("idf is strictly decreasing in df", "[textproc][property]") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> n_dist(2, 100000);
    for (int i = 0; i < 1000; ++i) {
        const auto n = n_dist(rng);
        std::uniform_int_distribution<std::size_t> df_dist(1, n - 1);
        const auto df = df_dist(rng);
        REQUIRE(idf(df, n) > idf(df + 1, n));
        REQUIRE(idf(df + 1, n) > 0.0);
    }
}

TEST_CASE("normalize_answer", "[textproc]") {
    CHECK(normalize_answer("The Seven.") == "seven");
    CHECK(normalize_answer("Earvin  Magic   Johnson") == "earvin magic johnson");
    CHECK(normalize_answer("Wilton Norman Chamberlain") == "wilton norman chamberlain");
    CHECK(normalize_answer("  a Theme, an apple!  ") == "theme apple");
    CHECK(normalize_answer("Rookie-of-the-Year") == "rookieoftheyear");
    CHECK(normalize_answer("").empty());
    CHECK(normalize_answer("the").empty());
}

TEST_CASE("normalize_answer is idempotent", "[textproc][property]") {
    std::mt19937_64 rng(5);
    const std::vector<std::string> pieces = {"The", "a", "AN", " ", "  ", ".", ",", "seven", "Magic", "-", "\t",
                                             "the.", "\xC3\x89", "\xE2\x80\x94", "an."};
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    for (int i = 0; i < 1000; ++i) {
        std::string text;
        for (int j = 0; j < 10; ++j) {
            text += pieces[pick(rng)];
        }
        const auto once = normalize_answer(text);
        REQUIRE(normalize_answer(once) == once);
    }
}

TEST_CASE("normalize_whitespace collapses runs and trims", "[textproc]") {
    CHECK(normalize_whitespace("  seven\t\ttitles \n in  total ") == "seven titles in total");
    CHECK(normalize_whitespace("") == "");
}
