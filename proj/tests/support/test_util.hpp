#pragma once

#include "asksport/corpus.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

namespace asksport::testing {

/// Unique scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("asksport_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + "_" +
                 std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

    std::filesystem::path write(const std::string& name, const std::string& contents) const {
        auto p = path_ / name;
        std::ofstream(p, std::ios::binary) << contents;
        return p;
    }

private:
    std::filesystem::path path_;
};

inline Document doc(std::string id, std::string body, std::string title = "", std::string url = "") {
    if (title.empty()) {
        title = "Title " + id;
    }
    if (url.empty()) {
        url = "https://example.org/" + id;
    }
    return Document{std::move(id), std::move(title), std::move(url), std::move(body), "basketball"};
}

/// d1 "warriors win title", d2 "warriors warriors titles", d3 "basketball game".
inline std::vector<Document> three_doc_corpus() {
    return {doc("d1", "warriors win title"), doc("d2", "warriors warriors titles"), doc("d3", "basketball game")};
}

inline std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Random lowercase corpus over a small vocabulary so terms repeat often.
inline std::vector<Document> random_corpus(std::mt19937_64& rng, std::size_t max_docs, std::size_t max_tokens,
                                           std::size_t vocab = 40) {
    std::uniform_int_distribution<std::size_t> n_docs(1, max_docs);
    std::uniform_int_distribution<std::size_t> n_tokens(1, max_tokens);
    std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
    std::vector<Document> out;
    const auto count = n_docs(rng);
    for (std::size_t i = 0; i < count; ++i) {
        std::string body;
        const auto len = n_tokens(rng);
        for (std::size_t t = 0; t < len; ++t) {
            if (!body.empty()) body += ' ';
            body += "w" + std::to_string(word(rng));
        }
        out.push_back(doc("doc" + std::to_string(i), body));
    }
    return out;
}

} // namespace asksport::testing
