#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asksport {

/// One retrievable unit of corpus text.
struct Document {
    std::string doc_id;
    std::string title;
    std::string url;
    std::string body;
    std::string source_tag;

    bool operator==(const Document&) const = default;
};

/// A context-question-answer triple. gold_doc_id stays empty until
/// resolve_gold_docs() finds the document that contains the context.
struct QAPair {
    std::string question;
    std::string gold_answer;
    std::string gold_context;
    std::string gold_doc_id;

    bool operator==(const QAPair&) const = default;
};

/// Record field / CSV column names for each role.
struct FieldMapping {
    std::string title_field = "title";
    std::string url_field = "url";
    std::string body_field = "text";
    std::string question_field = "question";
    std::string answer_field = "answer";
    std::string context_field = "context";

    /// Cleaned wiki pages: title / url / text.
    static FieldMapping wiki_defaults();
    /// Context CSV files: title / url / context.
    static FieldMapping contexts_defaults();

    /// Throws ConfigError if any field name is empty.
    void validate() const;
};

enum class SourceFormat { wiki_json, contexts_csv };

/// Loads a mapping file (JSON). Flat keys override `base`; optional
/// "wiki_json" / "contexts_csv" sections override further for that format.
FieldMapping load_field_mapping(const std::filesystem::path& path, SourceFormat format);

struct IngestResult {
    std::vector<Document> documents;
    std::size_t skipped = 0;
};

/// "<tag>/<ordinal padded to 7 digits>"
std::string make_doc_id(std::string_view source_tag, std::size_t ordinal);

/// Reads wiki-page JSON (object, array of objects or JSON lines) or a
/// contexts CSV. `path` may be a directory, in which case every regular file
/// with a matching extension is read in filename order. Emitted documents are
/// numbered consecutively from `first_ordinal`; records with a missing field
/// or blank body are skipped with a warning.
///
/// Throws IngestError when a file cannot be read or parsed at all, and
/// EmptyCorpusError when nothing was emitted.
IngestResult ingest_documents(const std::filesystem::path& path, SourceFormat format,
                              const FieldMapping& mapping, std::string_view source_tag,
                              std::size_t first_ordinal = 0);

/// Concatenates corpora, rejecting any doc_id seen twice.
std::vector<Document> merge_corpora(std::span<const std::vector<Document>> parts);

struct ChunkOptions {
    std::size_t max_tokens = 200;
    std::size_t stride = 150;
};

/// Splits documents longer than max_tokens into overlapping windows that
/// start every `stride` tokens. Chunk ids are "<doc_id>#<n>".
std::vector<Document> chunk_documents(std::span<const Document> docs, const ChunkOptions& options = {});

/// Corpus JSON lines: one {"doc_id","title","url","body","source_tag"} per line.
void write_corpus(std::ostream& out, std::span<const Document> docs);
void write_corpus(const std::filesystem::path& path, std::span<const Document> docs);
std::vector<Document> read_corpus(const std::filesystem::path& path);

/// Reads a CSV of context-question-answer triples. Rows with an empty
/// question or answer are skipped with a warning.
/// Throws QaLoadError naming a missing column, EmptyQaSetError when no pair survives.
std::vector<QAPair> load_qa_pairs(const std::filesystem::path& path,
                                  const FieldMapping& mapping = FieldMapping{});

/// Sets gold_doc_id to the smallest doc_id whose whitespace-normalised body
/// contains the whitespace-normalised gold_context. Pairs with an empty
/// context, or no match, get an empty gold_doc_id.
std::vector<QAPair> resolve_gold_docs(std::span<const QAPair> pairs, std::span<const Document> corpus);

} // namespace asksport
