#include "asksport/config.hpp"

#include "asksport/error.hpp"

#include <nlohmann/json.hpp>
#include <toml.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace asksport {

using nlohmann::json;

namespace {

json toml_to_json(const toml::node& node, const std::string& key) {
    if (const auto* s = node.as_string()) {
        return s->get();
    }
    if (node.is_integer()) {
        return node.as_integer()->get();
    }
    if (node.is_floating_point()) {
        return node.as_floating_point()->get();
    }
    if (node.is_boolean()) {
        return node.as_boolean()->get();
    }
    if (const auto* arr = node.as_array()) {
        json out = json::array();
        for (const auto& item : *arr) {
            out.push_back(toml_to_json(item, key));
        }
        return out;
    }
    throw ConfigError("config key '" + key + "' has an unsupported TOML type");
}

json parse_toml(std::istream& in, const std::string& name) {
    toml::table table;
    try {
        table = toml::parse(in, name);
    } catch (const toml::parse_error& e) {
        const auto& where = e.source().begin;
        throw ConfigError(name + ":" + std::to_string(where.line) + ":" + std::to_string(where.column) + ": " +
                          std::string(e.description()));
    }
    json out = json::object();
    for (const auto& [key, node] : table) {
        const std::string k(key.str());
        out[k] = toml_to_json(node, k);
    }
    return out;
}

template <typename T>
T typed(const json& value, const std::string& key) {
    try {
        return value.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

std::size_t positive(const json& value, const std::string& key) {
    const auto v = typed<std::int64_t>(value, key);
    if (v < 0) {
        throw ConfigError("config key '" + key + "' must not be negative");
    }
    return static_cast<std::size_t>(v);
}

int parse_port(const std::string& text) {
    std::size_t used = 0;
    int port = 0;
    try {
        port = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw ConfigError("port must be an integer, got '" + text + "'");
    }
    return port;
}

} // namespace

void ServiceConfig::validate() const {
    if (port < 1 || port > 65535) {
        throw ConfigError("port must be in [1, 65535], got " + std::to_string(port));
    }
    if (index_path.empty()) {
        throw ConfigError("index_path is required");
    }
    std::ifstream probe(index_path, std::ios::binary);
    if (!probe) {
        throw ConfigError("index_path '" + index_path.string() + "' is not readable");
    }
    if (reader_mode != ReaderMode::baseline && remote_reader_url.empty()) {
        throw ConfigError("reader_mode " + std::string(to_string(reader_mode)) + " needs remote_reader_url");
    }
    if (remote_timeout_ms <= 0) {
        throw ConfigError("remote_timeout_ms must be positive");
    }
    if (k_docs == 0) {
        throw ConfigError("k_docs must be at least 1");
    }
    if (n_answers == 0 || n_answers > kDefaultAnswers) {
        throw ConfigError("n_answers must be in [1, 3]");
    }
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    json doc;
    if (path.extension() == ".toml") {
        doc = parse_toml(in, path.string());
    } else {
        doc = json::parse(in, nullptr, false);
        if (doc.is_discarded() || !doc.is_object()) {
            throw ConfigError("config file '" + path.string() + "' must hold a JSON object");
        }
    }

    ServiceConfig config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "host") {
            config.host = typed<std::string>(value, key);
        } else if (key == "port") {
            config.port = typed<int>(value, key);
        } else if (key == "index_path") {
            std::filesystem::path p = typed<std::string>(value, key);
            config.index_path = p.is_relative() ? path.parent_path() / p : p;
        } else if (key == "reader_mode") {
            try {
                config.reader_mode = parse_reader_mode(typed<std::string>(value, key));
            } catch (const InputError& e) {
                throw ConfigError(e.what());
            }
        } else if (key == "remote_reader_url") {
            config.remote_reader_url = typed<std::string>(value, key);
        } else if (key == "remote_timeout_ms") {
            config.remote_timeout_ms = typed<std::int64_t>(value, key);
        } else if (key == "k_docs") {
            config.k_docs = positive(value, key);
        } else if (key == "n_answers") {
            config.n_answers = positive(value, key);
        } else if (key == "cors_allowed_origins") {
            config.cors_allowed_origins = typed<std::vector<std::string>>(value, key);
        } else if (key == "corpus_name") {
            config.corpus_name = typed<std::string>(value, key);
        } else if (key == "static_dir") {
            std::filesystem::path p = typed<std::string>(value, key);
            config.static_dir = p.is_relative() ? path.parent_path() / p : p;
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return config;
}

EnvLookup process_env() {
    return [](std::string_view name) -> std::optional<std::string> {
        const char* v = std::getenv(std::string(name).c_str());
        if (!v || !*v) {
            return std::nullopt;
        }
        return std::string(v);
    };
}

void apply_env_overrides(ServiceConfig& config, const EnvLookup& env) {
    if (auto v = env("ASKSPORT_INDEX_PATH")) {
        config.index_path = *v;
    }
    if (auto v = env("ASKSPORT_PORT")) {
        config.port = parse_port(*v);
    }
    if (auto v = env("ASKSPORT_READER_MODE")) {
        try {
            config.reader_mode = parse_reader_mode(*v);
        } catch (const InputError& e) {
            throw ConfigError(e.what());
        }
    }
    if (auto v = env("ASKSPORT_REMOTE_READER_URL")) {
        config.remote_reader_url = *v;
    }
}

} // namespace asksport
