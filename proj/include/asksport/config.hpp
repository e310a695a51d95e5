#pragma once

#include "asksport/pipeline.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace asksport {

struct ServiceConfig {
    std::string host = "0.0.0.0";
    int port = 8080;
    std::filesystem::path index_path;
    ReaderMode reader_mode = ReaderMode::baseline;
    std::string remote_reader_url;
    std::int64_t remote_timeout_ms = 30000;
    std::size_t k_docs = kDefaultRetrievedDocs;
    std::size_t n_answers = kDefaultAnswers;
    std::vector<std::string> cors_allowed_origins = {"http://localhost:5173"};
    std::string corpus_name;          // shown by /api/status; defaults to the indexed source tags
    std::filesystem::path static_dir; // optional UI assets served at /

    /// Throws ConfigError for an out-of-range port, missing index file,
    /// a remote mode without URL, or zero k_docs / n_answers outside 1..3.
    void validate() const;
};

/// Reads a JSON or TOML file (chosen by the .toml extension) whose keys are
/// the ServiceConfig field names. Unknown keys are rejected.
ServiceConfig load_service_config(const std::filesystem::path& path);

using EnvLookup = std::function<std::optional<std::string>(std::string_view name)>;

EnvLookup process_env();

/// Applies ASKSPORT_INDEX_PATH, ASKSPORT_PORT, ASKSPORT_READER_MODE and
/// ASKSPORT_REMOTE_READER_URL on top of `config`.
void apply_env_overrides(ServiceConfig& config, const EnvLookup& env);

} // namespace asksport
