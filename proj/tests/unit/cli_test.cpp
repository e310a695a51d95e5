#include "asksport/cli.hpp"
#include "asksport/index.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

using namespace asksport;
using namespace asksport::testing;
using nlohmann::json;

namespace {

const std::filesystem::path kFixtures = ASKSPORT_FIXTURES_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "asksport");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string index_of_three_docs(const TempDir& dir) {
    const auto idx = (dir / "three.sqaidx").string();
    const auto r = run({"index", "--corpus", (kFixtures / "three_docs.jsonl").string(), "--out", idx});
    REQUIRE(r.code == 0);
    return idx;
}

} // namespace

TEST_CASE("every command documents its flags", "[cli]") {
    const std::map<std::string, std::vector<std::string>> flags = {
        {"ingest", {"--wiki", "--contexts", "--mapping", "--tag", "--out"}},
        {"index", {"--corpus", "--out"}},
        {"ask", {"--index", "--question", "--k", "--answers", "--reader", "--json"}},
        {"serve", {"--config"}},
        {"eval", {"--index", "--qa", "--k", "--reader", "--json"}},
    };
    for (const auto& [cmd, names] : flags) {
        const auto r = run({cmd, "--help"});
        INFO(cmd);
        CHECK(r.code == 0);
        for (const auto& f : names) {
            CHECK(r.out.find(f) != std::string::npos);
        }
    }
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("usage errors exit with 1", "[cli]") {
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"ask", "--index", "x"}).code == 1);
    CHECK(run({"ask", "--index", "x", "--question", "q", "--bogus"}).code == 1);
    CHECK(run({"ask", "--index", "x", "--question", "q", "--answers", "4"}).code == 1);
    CHECK(run({"ask", "--index", "x", "--question", "q", "--reader", "gpt"}).code == 1);

    const auto missing = run({"index", "--corpus", "missing.jsonl", "--out", "x.sqaidx"});
    CHECK(missing.code == 1);
    CHECK(missing.err.rfind("error: ", 0) == 0);
}

TEST_CASE("ask --json matches the golden response", "[cli]") {
    TempDir dir;
    const auto idx = index_of_three_docs(dir);
    const auto r = run({"ask", "--index", idx, "--question", "warriors?", "--json"});
    REQUIRE(r.code == 0);
    auto actual = json::parse(r.out);
    REQUIRE(actual.at("elapsed_ms").is_number());
    actual.erase("elapsed_ms");
    const auto golden = json::parse(read_text(kFixtures / "golden" / "ask_warriors.json"));
    CHECK(actual == golden);
    for (const auto& a : actual.at("answers")) {
        CHECK((a.at("doc_id") == "d1" || a.at("doc_id") == "d2"));
    }
}

TEST_CASE("ask prints answers or the fallback sentence", "[cli]") {
    TempDir dir;
    const auto idx = index_of_three_docs(dir);

    const auto r = run({"ask", "--index", idx, "--question", "warriors?"});
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "Question: warriors?\n"
          "1. title\n   score:    1.0000\n   document: Title d1\n   url:      https://example.org/d1\n"
          "2. titles\n   score:    1.0000\n   document: Title d2\n   url:      https://example.org/d2\n"
          "3. win\n   score:    1.0000\n   document: Title d1\n   url:      https://example.org/d1\n");

    const auto none = run({"ask", "--index", idx, "--question", "zzqq xxyyk"});
    CHECK(none.code == 0);
    CHECK(none.out == "Question: zzqq xxyyk\nWe do not have an answer for your question\n");

    const auto remote = run({"ask", "--index", idx, "--question", "q", "--reader", "remote"});
    CHECK(remote.code == 1);

    const auto down = run({"ask", "--index", idx, "--question", "warriors", "--reader", "remote", "--remote-url",
                           "http://127.0.0.1:1", "--timeout-ms", "500"});
    CHECK(down.code == 2);
}

TEST_CASE("ingest, index and eval from a contexts CSV", "[cli]") {
    TempDir dir;
    const auto corpus = (dir / "corpus.jsonl").string();
    const auto idx = (dir / "idx.sqaidx").string();
    const auto csv = (kFixtures / "basketball_contexts.csv").string();

    auto r = run({"ingest", "--contexts", csv, "--tag", "basketball", "--out", corpus});
    REQUIRE(r.code == 0);
    const auto docs = read_corpus(corpus);
    REQUIRE(docs.size() == 4);
    CHECK(docs[0].doc_id == "basketball/0000000");
    REQUIRE(run({"index", "--corpus", corpus, "--out", idx}).code == 0);
    CHECK(load_index(std::filesystem::path(idx)).n_docs() == 4);

    r = run({"eval", "--index", idx, "--qa", csv, "--json"});
    REQUIRE(r.code == 0);
    const auto report = json::parse(r.out);
    CHECK(report.at("n_questions") == 4);
    CHECK(report.at("k") == 10);
    CHECK(report.at("hit_at_k") == 1.0);
    CHECK(report.at("per_question").at(0).at("predicted") == "seven");
    CHECK(report.at("per_question").at(0).at("em") == 1.0);

    r = run({"eval", "--index", idx, "--qa", csv, "--any-of-3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("Case\tQuestion\tAnswer\tScore", 0) == 0);
    CHECK(r.out.find("F1 (any answer): ") != std::string::npos);
}

TEST_CASE("the installed binary behaves like run_cli", "[cli]") {
    const char* binary = std::getenv("ASKSPORT_CLI");
    if (!binary) {
        SKIP("ASKSPORT_CLI not set");
    }
    TempDir dir;
    const auto idx = index_of_three_docs(dir);
    const std::string cmd = std::string(binary) + " ask --index " + idx + " --question 'zzqq xxyyk' 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string output;
    char buf[256];
    while (std::fgets(buf, sizeof buf, pipe)) output += buf;
    const int status = ::pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(output == "Question: zzqq xxyyk\nWe do not have an answer for your question\n");

    const int bad = std::system((std::string(binary) + " nosuchcommand >/dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(bad) == 1);
}
