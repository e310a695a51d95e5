#include "asksport/index.hpp"

#include "asksport/error.hpp"
#include "asksport/textproc.hpp"

#include <nlohmann/json.hpp>
#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace asksport {

using nlohmann::json;

namespace {

constexpr std::string_view kMagicPrefix = "SQAIDX";
constexpr std::string_view kTrailerPrefix = "crc32 ";

std::uint32_t crc32_of(std::string_view bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in bounded pieces.
    while (!bytes.empty()) {
        const auto n = static_cast<uInt>(std::min<std::size_t>(bytes.size(), 1u << 30));
        crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), n);
        bytes.remove_prefix(n);
    }
    return static_cast<std::uint32_t>(crc);
}

std::string hex32(std::uint32_t v) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", v);
    return buf;
}

std::string dump_line(const json& j) {
    return j.dump(-1, ' ', false, json::error_handler_t::strict) + '\n';
}

[[noreturn]] void corrupt(const std::string& what) {
    throw IntegrityError("index file is corrupt: " + what);
}

template <typename T>
T get_field(const json& obj, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        corrupt(std::string("missing field '") + key + "'");
    }
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        corrupt(std::string("field '") + key + "' has the wrong type");
    }
}

double mean_length(const std::vector<DocEntry>& docs) {
    std::size_t total = 0;
    for (const auto& d : docs) {
        total += d.length;
    }
    return static_cast<double>(total) / static_cast<double>(docs.size());
}

} // namespace

void IndexParams::validate() const {
    if (!(k1 >= 0.0) || !(b >= 0.0 && b <= 1.0)) {
        throw DomainError("BM25 parameters require k1 >= 0 and 0 <= b <= 1");
    }
}

Index Index::build(std::span<const Document> corpus, const IndexParams& params) {
    params.validate();
    if (corpus.empty()) {
        throw EmptyCorpusError("cannot build an index from an empty corpus");
    }
    if (corpus.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw InputError("corpus too large for 32-bit document ordinals");
    }

    Index index;
    index.params_ = params;
    index.docs_.reserve(corpus.size());
    for (const auto& doc : corpus) {
        index.docs_.push_back(DocEntry{doc, 0});
    }
    std::sort(index.docs_.begin(), index.docs_.end(),
              [](const DocEntry& a, const DocEntry& b) { return a.doc.doc_id < b.doc.doc_id; });
    for (std::size_t i = 1; i < index.docs_.size(); ++i) {
        if (index.docs_[i].doc.doc_id == index.docs_[i - 1].doc.doc_id) {
            throw DuplicateDocumentError(index.docs_[i].doc.doc_id);
        }
    }

    std::unordered_map<std::string, TermEntry> terms;
    std::unordered_map<std::string, std::uint32_t> counts;
    for (std::size_t ordinal = 0; ordinal < index.docs_.size(); ++ordinal) {
        auto& entry = index.docs_[ordinal];
        counts.clear();
        auto tokens = tokenize(entry.doc.body);
        entry.length = tokens.size();
        for (auto& token : tokens) {
            ++counts[std::move(token.text)];
        }
        for (auto& [term, tf] : counts) {
            auto& t = terms[term];
            t.postings.push_back(Posting{static_cast<std::uint32_t>(ordinal), tf});
            ++t.df;
        }
    }
    for (auto& [term, entry] : terms) {
        index.vocab_.emplace(term, std::move(entry));
    }
    index.avgdl_ = mean_length(index.docs_);
    return index;
}

std::optional<std::size_t> Index::ordinal_of(std::string_view doc_id) const {
    const auto it = std::lower_bound(docs_.begin(), docs_.end(), doc_id,
                                     [](const DocEntry& e, std::string_view id) { return e.doc.doc_id < id; });
    if (it == docs_.end() || it->doc.doc_id != doc_id) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - docs_.begin());
}

const TermEntry* Index::find_term(std::string_view term) const {
    const auto it = vocab_.find(term);
    return it == vocab_.end() ? nullptr : &it->second;
}

double Index::term_idf(std::string_view term) const {
    if (const auto* entry = find_term(term)) {
        return idf(entry->df, n_docs());
    }
    return idf_out_of_vocabulary(n_docs());
}

std::vector<Document> Index::documents() const {
    std::vector<Document> out;
    out.reserve(docs_.size());
    for (const auto& d : docs_) {
        out.push_back(d.doc);
    }
    return out;
}

std::optional<Document> get_document(const Index& index, std::string_view doc_id) {
    if (const auto ordinal = index.ordinal_of(doc_id)) {
        return index.doc(*ordinal).doc;
    }
    return std::nullopt;
}

// Layout:
//   SQAIDX01\n
//   {header}\n                 n_docs, n_terms, avgdl, params, payload_crc32
//   {doc}\n  x n_docs          doc_id order
//   {term}\n x n_terms         term order
//   crc32 xxxxxxxx\n           CRC-32 of every byte between the magic line and this line
// payload_crc32 in the header covers the doc and term lines only.
void save_index(const Index& index, std::ostream& out) {
    std::string body;
    for (const auto& entry : index.docs()) {
        const auto& d = entry.doc;
        body += dump_line(json::object({{"doc_id", d.doc_id},
                                        {"title", d.title},
                                        {"url", d.url},
                                        {"body", d.body},
                                        {"source_tag", d.source_tag},
                                        {"dl", entry.length}}));
    }
    for (const auto& [term, entry] : index.vocab()) {
        json postings = json::array();
        for (const auto& p : entry.postings) {
            postings.push_back(json::array({p.doc, p.tf}));
        }
        body += dump_line(json::object({{"term", term}, {"df", entry.df}, {"postings", std::move(postings)}}));
    }

    const json header = {
        {"format", "asksport-index"},
        {"n_docs", index.n_docs()},
        {"n_terms", index.vocab().size()},
        {"avgdl", index.avgdl()},
        {"params", {{"k1", index.params().k1}, {"b", index.params().b}}},
        {"payload_crc32", hex32(crc32_of(body))},
    };
    const std::string payload = dump_line(header) + body;

    out << kIndexMagic << '\n' << payload << kTrailerPrefix << hex32(crc32_of(payload)) << '\n';
    if (!out) {
        throw IndexError("I/O error while writing index");
    }
}

void save_index(const Index& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IndexError("cannot open '" + path.string() + "' for writing");
    }
    save_index(index, out);
    out.close();
    if (!out) {
        throw IndexError("I/O error while writing '" + path.string() + "'");
    }
}

Index load_index(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string data = std::move(buffer).str();
    std::string_view view(data);

    if (view.size() < kIndexMagic.size() || !view.starts_with(kMagicPrefix)) {
        corrupt("missing magic marker");
    }
    if (view.substr(0, kIndexMagic.size()) != kIndexMagic) {
        throw UnsupportedVersionError("unsupported index version marker '" +
                                      std::string(view.substr(kMagicPrefix.size(), 2)) + "' (expected '" +
                                      std::string(kIndexMagic.substr(kMagicPrefix.size())) + "')");
    }
    view.remove_prefix(kIndexMagic.size());
    if (!view.starts_with('\n')) {
        corrupt("malformed magic line");
    }
    view.remove_prefix(1);

    if (!view.ends_with('\n')) {
        corrupt("truncated file");
    }
    const auto trailer_pos = view.rfind('\n', view.size() - 2);
    const auto trailer_start = trailer_pos == std::string_view::npos ? 0 : trailer_pos + 1;
    const auto trailer = view.substr(trailer_start, view.size() - trailer_start - 1);
    if (!trailer.starts_with(kTrailerPrefix) || trailer.size() != kTrailerPrefix.size() + 8) {
        corrupt("missing checksum trailer");
    }
    const auto payload = view.substr(0, trailer_start);
    if (hex32(crc32_of(payload)) != trailer.substr(kTrailerPrefix.size())) {
        corrupt("checksum mismatch");
    }

    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos < payload.size();) {
        const auto nl = payload.find('\n', pos);
        lines.push_back(payload.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) {
        corrupt("missing header");
    }

    auto parse_line = [](std::string_view line) {
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            corrupt("unparseable record");
        }
        return j;
    };

    const json header = parse_line(lines[0]);
    const auto n_docs = get_field<std::size_t>(header, "n_docs");
    const auto n_terms = get_field<std::size_t>(header, "n_terms");
    if (n_docs == 0 || lines.size() != 1 + n_docs + n_terms) {
        corrupt("record count does not match header");
    }
    const auto body_start = lines[0].size() + 1;
    if (get_field<std::string>(header, "payload_crc32") != hex32(crc32_of(payload.substr(body_start)))) {
        corrupt("payload checksum mismatch");
    }

    Index index;
    const auto params = get_field<json>(header, "params");
    index.params_.k1 = get_field<double>(params, "k1");
    index.params_.b = get_field<double>(params, "b");
    index.avgdl_ = get_field<double>(header, "avgdl");

    index.docs_.reserve(n_docs);
    for (std::size_t i = 0; i < n_docs; ++i) {
        const json rec = parse_line(lines[1 + i]);
        DocEntry entry;
        entry.doc.doc_id = get_field<std::string>(rec, "doc_id");
        entry.doc.title = get_field<std::string>(rec, "title");
        entry.doc.url = get_field<std::string>(rec, "url");
        entry.doc.body = get_field<std::string>(rec, "body");
        entry.doc.source_tag = get_field<std::string>(rec, "source_tag");
        entry.length = get_field<std::size_t>(rec, "dl");
        if (!index.docs_.empty() && !(index.docs_.back().doc.doc_id < entry.doc.doc_id)) {
            corrupt("documents out of order");
        }
        index.docs_.push_back(std::move(entry));
    }

    std::vector<std::size_t> tf_sums(n_docs, 0);
    const std::string* previous = nullptr;
    for (std::size_t i = 0; i < n_terms; ++i) {
        const json rec = parse_line(lines[1 + n_docs + i]);
        auto term = get_field<std::string>(rec, "term");
        TermEntry entry;
        entry.df = get_field<std::size_t>(rec, "df");
        for (const auto& p : get_field<json>(rec, "postings")) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() || !p[1].is_number_unsigned()) {
                corrupt("malformed posting");
            }
            const auto doc = p[0].get<std::uint64_t>();
            const auto tf = p[1].get<std::uint64_t>();
            if (doc >= n_docs || tf == 0 || tf > std::numeric_limits<std::uint32_t>::max() ||
                (!entry.postings.empty() && entry.postings.back().doc >= doc)) {
                corrupt("invalid posting for term '" + term + "'");
            }
            entry.postings.push_back(Posting{static_cast<std::uint32_t>(doc), static_cast<std::uint32_t>(tf)});
            tf_sums[doc] += tf;
        }
        if (entry.df != entry.postings.size() || entry.df == 0) {
            corrupt("df mismatch for term '" + term + "'");
        }
        if (previous && !(*previous < term)) {
            corrupt("terms out of order");
        }
        const auto it = index.vocab_.emplace_hint(index.vocab_.end(), std::move(term), std::move(entry));
        previous = &it->first;
    }

    for (std::size_t i = 0; i < n_docs; ++i) {
        if (tf_sums[i] != index.docs_[i].length) {
            corrupt("document length mismatch for '" + index.docs_[i].doc.doc_id + "'");
        }
    }
    if (mean_length(index.docs_) != index.avgdl_) {
        corrupt("avgdl does not match document lengths");
    }
    try {
        index.params_.validate();
    } catch (const DomainError&) {
        corrupt("invalid BM25 parameters");
    }
    return index;
}

Index load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IndexError("cannot open index file '" + path.string() + "'");
    }
    return load_index(in);
}

} // namespace asksport
