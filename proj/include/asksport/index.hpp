#pragma once

#include "asksport/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asksport {

/// BM25 free parameters: k1 controls tf saturation, b length normalisation.
struct IndexParams {
    double k1 = 1.2;
    double b = 0.75;

    /// Throws DomainError unless k1 >= 0 and 0 <= b <= 1.
    void validate() const;

    bool operator==(const IndexParams&) const = default;
};

struct Posting {
    std::uint32_t doc = 0;  // ordinal into Index::docs()
    std::uint32_t tf = 0;

    bool operator==(const Posting&) const = default;
};

struct TermEntry {
    std::size_t df = 0;
    std::vector<Posting> postings;  // ascending doc ordinal, df entries

    bool operator==(const TermEntry&) const = default;
};

struct DocEntry {
    Document doc;
    std::size_t length = 0;  // token count of doc.body

    bool operator==(const DocEntry&) const = default;
};

using Vocabulary = std::map<std::string, TermEntry, std::less<>>;

/// Immutable inverted index over a corpus. Documents are stored in doc_id
/// order and identified by their position in that order (the ordinal).
/// All member functions are const, so one instance can be shared by any
/// number of threads.
class Index {
public:
    /// Throws EmptyCorpusError for an empty corpus and DuplicateDocumentError
    /// if two documents share a doc_id.
    static Index build(std::span<const Document> corpus, const IndexParams& params = {});

    std::size_t n_docs() const noexcept { return docs_.size(); }
    double avgdl() const noexcept { return avgdl_; }
    const IndexParams& params() const noexcept { return params_; }

    std::span<const DocEntry> docs() const noexcept { return docs_; }
    const DocEntry& doc(std::size_t ordinal) const { return docs_.at(ordinal); }
    std::optional<std::size_t> ordinal_of(std::string_view doc_id) const;

    const Vocabulary& vocab() const noexcept { return vocab_; }
    const TermEntry* find_term(std::string_view term) const;

    /// Smoothed idf of a term; terms outside the vocabulary get the df=0 value.
    double term_idf(std::string_view term) const;

    /// Plain copies of every stored document, in doc_id order.
    std::vector<Document> documents() const;

    bool operator==(const Index&) const = default;

private:
    friend Index load_index(std::istream& in);

    Index() = default;

    std::vector<DocEntry> docs_;
    Vocabulary vocab_;
    double avgdl_ = 0.0;
    IndexParams params_;
};

inline Index build_index(std::span<const Document> corpus, const IndexParams& params = {}) {
    return Index::build(corpus, params);
}

/// Magic bytes that open every index file; the last two characters are the
/// format version.
inline constexpr std::string_view kIndexMagic = "SQAIDX01";

void save_index(const Index& index, std::ostream& out);
void save_index(const Index& index, const std::filesystem::path& path);

/// Throws UnsupportedVersionError for a foreign version marker and
/// IntegrityError for truncated, corrupted or inconsistent files.
Index load_index(std::istream& in);
Index load_index(const std::filesystem::path& path);

std::optional<Document> get_document(const Index& index, std::string_view doc_id);

} // namespace asksport
