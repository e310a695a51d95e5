#include "asksport/corpus.hpp"

#include "asksport/csv.hpp"
#include "asksport/error.hpp"
#include "asksport/textproc.hpp"

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace asksport {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path, const char* what) {
    std::error_code ec;
    if (!fs::is_regular_file(path, ec)) {
        throw IngestError(std::string("cannot read ") + what + " '" + path.string() + "': not a regular file");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError(std::string("cannot open ") + what + " '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IngestError(std::string("I/O error reading '") + path.string() + "'");
    }
    return buffer.str();
}

bool is_blank(std::string_view s) {
    return s.find_first_not_of(" \t\r\n\f\v") == std::string_view::npos;
}

std::vector<fs::path> list_sources(const fs::path& path, SourceFormat format) {
    std::error_code ec;
    if (!fs::exists(path, ec)) {
        throw IngestError("input path does not exist: " + path.string());
    }
    if (!fs::is_directory(path, ec)) {
        return {path};
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        const auto ext = entry.path().extension().string();
        const bool wanted = format == SourceFormat::wiki_json ? (ext == ".json" || ext == ".jsonl")
                                                              : ext == ".csv";
        if (wanted) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

std::optional<std::string> scalar_field(const json& record, const std::string& name) {
    const auto it = record.find(name);
    if (it == record.end() || it->is_null() || it->is_structured()) {
        return std::nullopt;
    }
    if (it->is_string()) {
        return it->get<std::string>();
    }
    return it->dump();
}

// Whole-file JSON (object or array) first, JSON lines otherwise.
std::vector<json> json_records(const std::string& text, const fs::path& file, std::size_t& skipped) {
    std::vector<json> records;
    if (is_blank(text)) {
        return records;
    }
    json whole = json::parse(text, nullptr, false);
    if (!whole.is_discarded()) {
        if (whole.is_array()) {
            records.assign(whole.begin(), whole.end());
        } else {
            records.push_back(std::move(whole));
        }
        return records;
    }

    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (is_blank(line)) {
            continue;
        }
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded()) {
            spdlog::warn("{}:{}: skipping line that is not valid JSON", file.string(), line_no);
            ++skipped;
            continue;
        }
        records.push_back(std::move(record));
    }
    if (records.empty() && skipped > 0) {
        throw IngestError("'" + file.string() + "' is neither a JSON document nor JSON lines");
    }
    return records;
}

struct RawDocument {
    std::string title;
    std::string url;
    std::string body;
};

void read_wiki_file(const fs::path& file, const FieldMapping& mapping, std::vector<RawDocument>& out,
                    std::size_t& skipped) {
    const auto records = json_records(read_file(file, "wiki file"), file, skipped);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& record = records[i];
        if (!record.is_object()) {
            spdlog::warn("{}: record {} is not a JSON object, skipped", file.string(), i);
            ++skipped;
            continue;
        }
        auto title = scalar_field(record, mapping.title_field);
        auto url = scalar_field(record, mapping.url_field);
        auto body = scalar_field(record, mapping.body_field);
        const char* missing = !title ? "title" : !url ? "url" : !body ? "body" : nullptr;
        if (missing) {
            spdlog::warn("{}: record {} lacks the {} field, skipped", file.string(), i, missing);
            ++skipped;
            continue;
        }
        if (is_blank(*body)) {
            spdlog::warn("{}: record {} has an empty body, skipped", file.string(), i);
            ++skipped;
            continue;
        }
        out.push_back({std::move(*title), std::move(*url), std::move(*body)});
    }
}

void read_contexts_file(const fs::path& file, const FieldMapping& mapping, std::vector<RawDocument>& out,
                        std::size_t& skipped) {
    const auto text = read_file(file, "contexts file");
    csv::Table table;
    try {
        table = csv::parse_table(text);
    } catch (const InputError& e) {
        throw IngestError(file.string() + ": " + e.what());
    }
    if (table.header.empty()) {
        return;
    }
    const int title_col = table.column(mapping.title_field);
    const int url_col = table.column(mapping.url_field);
    const int body_col = table.column(mapping.body_field);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        auto cell = [&](int col) -> const std::string* {
            return col >= 0 && static_cast<std::size_t>(col) < row.size() ? &row[col] : nullptr;
        };
        const auto* title = cell(title_col);
        const auto* url = cell(url_col);
        const auto* body = cell(body_col);
        const char* missing = !title ? "title" : !url ? "url" : !body ? "body" : nullptr;
        if (missing) {
            spdlog::warn("{}: row {} lacks the {} column, skipped", file.string(), i + 1, missing);
            ++skipped;
            continue;
        }
        if (is_blank(*body)) {
            spdlog::warn("{}: row {} has an empty body, skipped", file.string(), i + 1);
            ++skipped;
            continue;
        }
        out.push_back({*title, *url, *body});
    }
}

nlohmann::ordered_json document_to_json(const Document& d) {
    nlohmann::ordered_json j;
    j["doc_id"] = d.doc_id;
    j["title"] = d.title;
    j["url"] = d.url;
    j["body"] = d.body;
    j["source_tag"] = d.source_tag;
    return j;
}

} // namespace

FieldMapping FieldMapping::wiki_defaults() {
    return FieldMapping{};
}

FieldMapping FieldMapping::contexts_defaults() {
    FieldMapping m;
    m.body_field = "context";
    return m;
}

void FieldMapping::validate() const {
    const std::pair<const char*, const std::string*> fields[] = {
        {"title_field", &title_field},       {"url_field", &url_field},
        {"body_field", &body_field},         {"question_field", &question_field},
        {"answer_field", &answer_field},     {"context_field", &context_field},
    };
    for (const auto& [name, value] : fields) {
        if (value->empty()) {
            throw ConfigError(std::string("field mapping: ") + name + " must not be empty");
        }
    }
}

FieldMapping load_field_mapping(const fs::path& path, SourceFormat format) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open mapping file '" + path.string() + "'");
    }
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw ConfigError("mapping file '" + path.string() + "' must hold a JSON object");
    }
    FieldMapping m = format == SourceFormat::wiki_json ? FieldMapping::wiki_defaults()
                                                      : FieldMapping::contexts_defaults();
    auto apply = [&](const json& obj) {
        auto set = [&](const char* key, std::string& target) {
            if (auto it = obj.find(key); it != obj.end()) {
                if (!it->is_string()) {
                    throw ConfigError(std::string("mapping key '") + key + "' must be a string");
                }
                target = it->get<std::string>();
            }
        };
        set("title_field", m.title_field);
        set("url_field", m.url_field);
        set("body_field", m.body_field);
        set("question_field", m.question_field);
        set("answer_field", m.answer_field);
        set("context_field", m.context_field);
    };
    apply(doc);
    const char* section = format == SourceFormat::wiki_json ? "wiki_json" : "contexts_csv";
    if (auto it = doc.find(section); it != doc.end() && it->is_object()) {
        apply(*it);
    }
    m.validate();
    return m;
}

std::string make_doc_id(std::string_view source_tag, std::size_t ordinal) {
    char digits[32];
    std::snprintf(digits, sizeof digits, "%07zu", ordinal);
    std::string id(source_tag);
    id += '/';
    id += digits;
    return id;
}

IngestResult ingest_documents(const fs::path& path, SourceFormat format, const FieldMapping& mapping,
                              std::string_view source_tag, std::size_t first_ordinal) {
    mapping.validate();
    if (source_tag.empty()) {
        throw IngestError("source tag must not be empty");
    }

    std::vector<RawDocument> raw;
    IngestResult result;
    for (const auto& file : list_sources(path, format)) {
        if (format == SourceFormat::wiki_json) {
            read_wiki_file(file, mapping, raw, result.skipped);
        } else {
            read_contexts_file(file, mapping, raw, result.skipped);
        }
    }
    if (raw.empty()) {
        throw EmptyCorpusError("no documents could be ingested from '" + path.string() + "'");
    }

    result.documents.reserve(raw.size());
    std::size_t ordinal = first_ordinal;
    for (auto& r : raw) {
        result.documents.push_back(Document{make_doc_id(source_tag, ordinal++), std::move(r.title),
                                            std::move(r.url), std::move(r.body), std::string(source_tag)});
    }
    if (result.skipped > 0) {
        spdlog::warn("{}: {} record(s) skipped", path.string(), result.skipped);
    }
    return result;
}

std::vector<Document> merge_corpora(std::span<const std::vector<Document>> parts) {
    std::vector<Document> merged;
    std::unordered_set<std::string> seen;
    for (const auto& part : parts) {
        for (const auto& doc : part) {
            if (!seen.insert(doc.doc_id).second) {
                throw DuplicateDocumentError(doc.doc_id);
            }
            merged.push_back(doc);
        }
    }
    return merged;
}

std::vector<Document> chunk_documents(std::span<const Document> docs, const ChunkOptions& options) {
    if (options.max_tokens == 0 || options.stride == 0) {
        throw InputError("chunking requires max_tokens >= 1 and stride >= 1");
    }
    std::vector<Document> out;
    for (const auto& doc : docs) {
        const auto tokens = tokenize(doc.body);
        if (tokens.size() <= options.max_tokens) {
            out.push_back(doc);
            continue;
        }
        std::size_t n = 0;
        for (std::size_t start = 0;; start += options.stride) {
            const std::size_t end = std::min(start + options.max_tokens, tokens.size());
            Document chunk = doc;
            chunk.doc_id = doc.doc_id + "#" + std::to_string(n++);
            chunk.body = doc.body.substr(tokens[start].char_start,
                                         tokens[end - 1].char_end - tokens[start].char_start);
            out.push_back(std::move(chunk));
            if (end == tokens.size()) {
                break;
            }
        }
    }
    return out;
}

void write_corpus(std::ostream& out, std::span<const Document> docs) {
    for (const auto& doc : docs) {
        out << document_to_json(doc).dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
    }
}

void write_corpus(const fs::path& path, std::span<const Document> docs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IngestError("cannot write corpus file '" + path.string() + "'");
    }
    write_corpus(out, docs);
    if (!out) {
        throw IngestError("I/O error writing '" + path.string() + "'");
    }
}

std::vector<Document> read_corpus(const fs::path& path) {
    const auto text = read_file(path, "corpus file");
    std::vector<Document> docs;
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (is_blank(line)) {
            continue;
        }
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) {
            throw IngestError(path.string() + ":" + std::to_string(line_no) + ": not a JSON object");
        }
        Document doc;
        for (auto [key, target] : {std::pair{"doc_id", &doc.doc_id}, std::pair{"title", &doc.title},
                                   std::pair{"url", &doc.url}, std::pair{"body", &doc.body},
                                   std::pair{"source_tag", &doc.source_tag}}) {
            const auto it = record.find(key);
            if (it == record.end() || !it->is_string()) {
                throw IngestError(path.string() + ":" + std::to_string(line_no) + ": missing string field '" +
                                  key + "'");
            }
            *target = it->get<std::string>();
        }
        docs.push_back(std::move(doc));
    }
    if (docs.empty()) {
        throw EmptyCorpusError("corpus file '" + path.string() + "' holds no documents");
    }
    return docs;
}

std::vector<QAPair> load_qa_pairs(const fs::path& path, const FieldMapping& mapping) {
    mapping.validate();
    std::string text;
    try {
        text = read_file(path, "QA file");
    } catch (const IngestError& e) {
        throw QaLoadError(e.what());
    }
    csv::Table table;
    try {
        table = csv::parse_table(text);
    } catch (const InputError& e) {
        throw QaLoadError(path.string() + ": " + e.what());
    }
    if (table.header.empty()) {
        throw EmptyQaSetError("QA file '" + path.string() + "' is empty");
    }
    const int question_col = table.column(mapping.question_field);
    const int answer_col = table.column(mapping.answer_field);
    const int context_col = table.column(mapping.context_field);
    for (auto [col, name] : {std::pair{question_col, &mapping.question_field},
                             std::pair{answer_col, &mapping.answer_field},
                             std::pair{context_col, &mapping.context_field}}) {
        if (col < 0) {
            throw QaLoadError("QA file '" + path.string() + "' has no column '" + *name + "'");
        }
    }

    std::vector<QAPair> pairs;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const auto width = static_cast<int>(row.size());
        if (question_col >= width || answer_col >= width || context_col >= width) {
            spdlog::warn("{}: row {} is short, skipped", path.string(), i + 1);
            continue;
        }
        if (is_blank(row[question_col]) || is_blank(row[answer_col])) {
            spdlog::warn("{}: row {} has an empty question or answer, skipped", path.string(), i + 1);
            continue;
        }
        pairs.push_back(QAPair{row[question_col], row[answer_col], row[context_col], {}});
    }
    if (pairs.empty()) {
        throw EmptyQaSetError("QA file '" + path.string() + "' yields no usable question-answer pairs");
    }
    return pairs;
}

std::vector<QAPair> resolve_gold_docs(std::span<const QAPair> pairs, std::span<const Document> corpus) {
    if (corpus.empty()) {
        throw InputError("resolve_gold_docs requires a non-empty corpus");
    }
    std::vector<const Document*> sorted;
    sorted.reserve(corpus.size());
    for (const auto& doc : corpus) {
        sorted.push_back(&doc);
    }
    std::sort(sorted.begin(), sorted.end(), [](const Document* a, const Document* b) { return a->doc_id < b->doc_id; });
    std::vector<std::string> bodies;
    bodies.reserve(sorted.size());
    for (const auto* doc : sorted) {
        bodies.push_back(normalize_whitespace(doc->body));
    }

    std::vector<QAPair> out(pairs.begin(), pairs.end());
    for (auto& pair : out) {
        pair.gold_doc_id.clear();
        const auto context = normalize_whitespace(pair.gold_context);
        if (context.empty()) {
            continue;
        }
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (bodies[i].find(context) != std::string::npos) {
                pair.gold_doc_id = sorted[i]->doc_id;
                break;
            }
        }
    }
    return out;
}

} // namespace asksport
