#include "asksport/cli.hpp"

#include "asksport/config.hpp"
#include "asksport/corpus.hpp"
#include "asksport/error.hpp"
#include "asksport/eval.hpp"
#include "asksport/index.hpp"
#include "asksport/pipeline.hpp"
#include "asksport/service.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <vector>

namespace asksport {

namespace {

struct IngestArgs {
    std::vector<std::string> wiki;
    std::vector<std::string> contexts;
    std::string mapping;
    std::string tag = "basketball";
    std::string out;
    bool chunk = false;
    std::size_t chunk_tokens = 200;
    std::size_t chunk_stride = 150;
};

struct IndexArgs {
    std::string corpus;
    std::string out;
    double k1 = 1.2;
    double b = 0.75;
};

struct ReaderArgs {
    std::string mode = "baseline";
    std::string remote_url;
    std::int64_t timeout_ms = 30000;
};

struct AskArgs {
    std::string index;
    std::string question;
    std::size_t k = kDefaultRetrievedDocs;
    std::size_t answers = kDefaultAnswers;
    ReaderArgs reader;
    bool json = false;
};

struct EvalArgs {
    std::string index;
    std::string qa;
    std::string mapping;
    std::size_t k = kDefaultRetrievedDocs;
    ReaderArgs reader;
    bool json = false;
    bool any_of_3 = false;
};

void add_reader_flags(CLI::App* cmd, ReaderArgs& args) {
    cmd->add_option("--reader", args.mode, "Answer reader: baseline, remote or remote_with_baseline_fallback")
        ->check(CLI::IsMember({"baseline", "remote", "remote_with_baseline_fallback"}))
        ->capture_default_str();
    cmd->add_option("--remote-url", args.remote_url, "Base URL of the remote reader (POST <url>/read)");
    cmd->add_option("--timeout-ms", args.timeout_ms, "Remote reader timeout in milliseconds")
        ->check(CLI::PositiveNumber);
}

AskOptions ask_options(const ReaderArgs& reader) {
    AskOptions options;
    options.reader_mode = parse_reader_mode(reader.mode);
    if (options.reader_mode != ReaderMode::baseline && reader.remote_url.empty()) {
        throw InputError("--reader " + reader.mode + " needs --remote-url");
    }
    options.remote = RemoteReaderConfig{reader.remote_url, std::chrono::milliseconds(reader.timeout_ms)};
    return options;
}

std::string score4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

int cmd_ingest(const IngestArgs& args, std::ostream& err) {
    if (args.wiki.empty() && args.contexts.empty()) {
        throw InputError("ingest needs at least one --wiki or --contexts source");
    }
    std::vector<std::vector<Document>> parts;
    std::size_t next = 0;
    std::size_t skipped = 0;
    auto ingest = [&](const std::string& path, SourceFormat format) {
        const auto mapping = args.mapping.empty()
                                 ? (format == SourceFormat::wiki_json ? FieldMapping::wiki_defaults()
                                                                      : FieldMapping::contexts_defaults())
                                 : load_field_mapping(args.mapping, format);
        auto result = ingest_documents(path, format, mapping, args.tag, next);
        next += result.documents.size();
        skipped += result.skipped;
        parts.push_back(std::move(result.documents));
    };
    for (const auto& path : args.wiki) {
        ingest(path, SourceFormat::wiki_json);
    }
    for (const auto& path : args.contexts) {
        ingest(path, SourceFormat::contexts_csv);
    }
    auto corpus = merge_corpora(parts);
    if (args.chunk) {
        corpus = chunk_documents(corpus, ChunkOptions{args.chunk_tokens, args.chunk_stride});
    }
    write_corpus(std::filesystem::path(args.out), corpus);
    err << "ingested " << corpus.size() << " documents (" << skipped << " skipped) into " << args.out << '\n';
    return 0;
}

int cmd_index(const IndexArgs& args, std::ostream& err) {
    const auto corpus = read_corpus(args.corpus);
    const auto index = build_index(corpus, IndexParams{args.k1, args.b});
    save_index(index, std::filesystem::path(args.out));
    err << "indexed " << index.n_docs() << " documents, " << index.vocab().size() << " terms into " << args.out
        << '\n';
    return 0;
}

void print_answers(const AskResponse& response, std::ostream& out) {
    out << "Question: " << response.question << '\n';
    if (response.answers.empty()) {
        out << response.message << '\n';
        return;
    }
    std::size_t rank = 0;
    for (const auto& a : response.answers) {
        out << ++rank << ". " << a.answer << '\n'
            << "   score:    " << score4(a.score) << '\n'
            << "   document: " << a.document_title << '\n'
            << "   url:      " << a.url << '\n';
    }
    if (response.degraded) {
        out << "(remote reader unavailable; answered by the baseline reader)\n";
    }
}

int cmd_ask(const AskArgs& args, std::ostream& out) {
    const auto index = load_index(std::filesystem::path(args.index));
    auto options = ask_options(args.reader);
    options.k_docs = args.k;
    options.n_answers = args.answers;
    const auto response = ask(index, args.question, options);
    if (args.json) {
        out << to_json(response).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    } else {
        print_answers(response, out);
    }
    return 0;
}

int cmd_eval(const EvalArgs& args, std::ostream& out) {
    const auto index = load_index(std::filesystem::path(args.index));
    const auto mapping =
        args.mapping.empty() ? FieldMapping{} : load_field_mapping(args.mapping, SourceFormat::contexts_csv);
    const auto pairs = load_qa_pairs(args.qa, mapping);
    const auto docs = index.documents();
    const auto resolved = resolve_gold_docs(pairs, docs);
    const auto report = evaluate(index, resolved, args.k, ask_options(args.reader));
    if (args.json) {
        out << to_json(report, args.any_of_3).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
            << '\n';
    } else {
        out << format_report(report, args.any_of_3);
    }
    return 0;
}

} // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"asksport: question answering over sports text (BM25 retriever + span reader)", "asksport"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Convert wiki JSON / contexts CSV into a corpus file");
    ingest_cmd->add_option("--wiki", ingest.wiki, "Wiki page JSON file or directory (repeatable)");
    ingest_cmd->add_option("--contexts", ingest.contexts, "Contexts CSV file or directory (repeatable)");
    ingest_cmd->add_option("--mapping", ingest.mapping, "JSON file overriding field names");
    ingest_cmd->add_option("--tag", ingest.tag, "Sport tag used as doc_id prefix")->capture_default_str();
    ingest_cmd->add_option("--out", ingest.out, "Output corpus (JSON lines)")->required();
    ingest_cmd->add_flag("--chunk", ingest.chunk, "Split long documents into overlapping passages");
    ingest_cmd->add_option("--chunk-tokens", ingest.chunk_tokens, "Passage length in tokens")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ingest_cmd->add_option("--chunk-stride", ingest.chunk_stride, "Tokens between passage starts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    IndexArgs index;
    auto* index_cmd = app.add_subcommand("index", "Build a BM25 index file from a corpus");
    index_cmd->add_option("--corpus", index.corpus, "Corpus file (JSON lines)")->required();
    index_cmd->add_option("--out", index.out, "Output index file")->required();
    index_cmd->add_option("--k1", index.k1, "BM25 k1 stored as the index default")->capture_default_str();
    index_cmd->add_option("--b", index.b, "BM25 b stored as the index default")->capture_default_str();

    AskArgs ask_args;
    auto* ask_cmd = app.add_subcommand("ask", "Answer one question");
    ask_cmd->add_option("--index", ask_args.index, "Index file")->required();
    ask_cmd->add_option("--question", ask_args.question, "Question in natural language")->required();
    ask_cmd->add_option("--k", ask_args.k, "Documents to retrieve")->check(CLI::PositiveNumber)->capture_default_str();
    ask_cmd->add_option("--answers", ask_args.answers, "Answers to return")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    add_reader_flags(ask_cmd, ask_args.reader);
    ask_cmd->add_flag("--json", ask_args.json, "Print the response as JSON");

    std::string config_path;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--config", config_path, "Service config (JSON or TOML)")->required();

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Score the pipeline on question-answer triples");
    eval_cmd->add_option("--index", eval.index, "Index file")->required();
    eval_cmd->add_option("--qa", eval.qa, "CSV with context, question and answer columns")->required();
    eval_cmd->add_option("--mapping", eval.mapping, "JSON file overriding column names");
    eval_cmd->add_option("--k", eval.k, "Documents to retrieve (hit@k)")->check(CLI::PositiveNumber)->capture_default_str();
    add_reader_flags(eval_cmd, eval.reader);
    eval_cmd->add_flag("--json", eval.json, "Print the report as JSON");
    eval_cmd->add_flag("--any-of-3", eval.any_of_3, "Also report EM/F1 against any returned answer");

    std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (ingest_cmd->parsed()) {
            return cmd_ingest(ingest, err);
        }
        if (index_cmd->parsed()) {
            return cmd_index(index, err);
        }
        if (ask_cmd->parsed()) {
            return cmd_ask(ask_args, out);
        }
        if (serve_cmd->parsed()) {
            auto config = load_service_config(config_path);
            apply_env_overrides(config, process_env());
            serve(config);
            return 0;
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(eval, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv, argv + argc);
    return run_cli(args, out, err);
}

} // namespace asksport
