#include "algosr/config.hpp"

#include <set>

#include "algosr/errors.hpp"
#include "algosr/ris.hpp"
#include "algosr/text.hpp"
#include "json.hpp"

namespace algosr {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    if (!known.contains(k)) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("key '") + key + "' has the wrong type");
  }
}

void read_count(const json& obj, const char* key, std::size_t& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_number_integer() || it->get<long long>() < 0) {
    throw ConfigError(std::string("key '") + key + "' must be a non-negative integer");
  }
  out = it->get<std::size_t>();
}

catalog::SyntheticCatalogSpec synthetic_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("'synthetic' must be an object");
  reject_unknown(j, {"seed", "n_topics", "vocab_per_topic", "n_docs", "words_per_doc", "cross_topic_leak"},
                 "synthetic");
  catalog::SyntheticCatalogSpec s;
  read_field(j, "seed", s.seed);
  read_field(j, "n_topics", s.n_topics);
  read_field(j, "vocab_per_topic", s.vocab_per_topic);
  read_field(j, "n_docs", s.n_docs);
  read_field(j, "words_per_doc", s.words_per_doc);
  read_field(j, "cross_topic_leak", s.cross_topic_leak);
  s.validate();
  return s;
}

catalog::HttpCatalogConfig http_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("'http' must be an object");
  reject_unknown(j, {"base_url", "page_size", "max_retries", "min_request_interval_ms", "auth_token_env", "timeout_ms"},
                 "http");
  catalog::HttpCatalogConfig c;
  read_field(j, "base_url", c.base_url);
  read_field(j, "page_size", c.page_size);
  read_field(j, "max_retries", c.max_retries);
  long long interval = c.min_request_interval.count();
  long long timeout = c.timeout.count();
  read_field(j, "min_request_interval_ms", interval);
  read_field(j, "timeout_ms", timeout);
  c.min_request_interval = std::chrono::milliseconds(interval);
  c.timeout = std::chrono::milliseconds(timeout);
  read_field(j, "auth_token_env", c.auth_token_env);
  c.validate();
  return c;
}

ordered_json synthetic_to_json(const catalog::SyntheticCatalogSpec& s) {
  ordered_json j;
  j["seed"] = s.seed;
  j["n_topics"] = s.n_topics;
  j["vocab_per_topic"] = s.vocab_per_topic;
  j["n_docs"] = s.n_docs;
  j["words_per_doc"] = s.words_per_doc;
  j["cross_topic_leak"] = s.cross_topic_leak;
  return j;
}

}  // namespace

bool BackendConfig::operator==(const BackendConfig& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case BackendKind::synthetic: return synthetic == o.synthetic;
    case BackendKind::http: return http == o.http;
    case BackendKind::ris: return ris_path == o.ris_path;
  }
  return false;
}

void RunConfig::validate() const {
  if (initial_keywords.empty()) throw ConfigError("initial_keywords must not be empty");
  for (const auto& k : initial_keywords) {
    if (textproc::normalize_phrase(k).empty()) throw ConfigError("initial keyword '" + k + "' has no usable tokens");
  }
  if (n_k < 1) throw ConfigError("n_k must be >= 1");
  if (max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (stability_window < 1) throw ConfigError("stability_window must be >= 1");
  if (per_kw_limit < 1) throw ConfigError("per_kw_limit must be >= 1");
  if (fetch_parallelism < 1) throw ConfigError("fetch_parallelism must be >= 1");
  switch (backend.kind) {
    case BackendKind::synthetic: backend.synthetic.validate(); break;
    case BackendKind::http: backend.http.validate(); break;
    case BackendKind::ris:
      if (backend.ris_path.empty()) throw ConfigError("ris backend needs a path");
      break;
  }
}

RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"initial_keywords", "n_k", "max_iterations", "stability_window", "per_kw_limit",
                     "fetch_parallelism", "backend", "synthetic", "http", "ris"},
                 "run config");
  RunConfig c;
  read_field(j, "initial_keywords", c.initial_keywords);
  for (auto& k : c.initial_keywords) k = text::collapse_whitespace(k);
  read_count(j, "n_k", c.n_k);
  read_field(j, "max_iterations", c.max_iterations);
  read_field(j, "stability_window", c.stability_window);
  read_count(j, "per_kw_limit", c.per_kw_limit);
  read_count(j, "fetch_parallelism", c.fetch_parallelism);

  std::string kind = "synthetic";
  read_field(j, "backend", kind);
  if (kind == "synthetic") {
    c.backend.kind = BackendKind::synthetic;
    if (j.contains("synthetic")) c.backend.synthetic = synthetic_from_json(j["synthetic"]);
  } else if (kind == "http") {
    c.backend.kind = BackendKind::http;
    if (!j.contains("http")) throw ConfigError("backend 'http' needs an 'http' section");
    c.backend.http = http_from_json(j["http"]);
  } else if (kind == "ris") {
    c.backend.kind = BackendKind::ris;
    if (!j.contains("ris") || !j["ris"].is_object()) throw ConfigError("backend 'ris' needs a 'ris' section");
    reject_unknown(j["ris"], {"path"}, "ris");
    std::string path;
    read_field(j["ris"], "path", path);
    c.backend.ris_path = path;
  } else {
    throw ConfigError("backend must be synthetic, http or ris; got '" + kind + "'");
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = ris::read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_run_config(text);
}

std::string write_run_config(const RunConfig& c) {
  ordered_json j;
  j["initial_keywords"] = c.initial_keywords;
  j["n_k"] = c.n_k;
  j["max_iterations"] = c.max_iterations;
  j["stability_window"] = c.stability_window;
  j["per_kw_limit"] = c.per_kw_limit;
  j["fetch_parallelism"] = c.fetch_parallelism;
  switch (c.backend.kind) {
    case BackendKind::synthetic:
      j["backend"] = "synthetic";
      j["synthetic"] = synthetic_to_json(c.backend.synthetic);
      break;
    case BackendKind::http: {
      j["backend"] = "http";
      ordered_json h;
      h["base_url"] = c.backend.http.base_url;
      h["page_size"] = c.backend.http.page_size;
      h["max_retries"] = c.backend.http.max_retries;
      h["min_request_interval_ms"] = c.backend.http.min_request_interval.count();
      h["auth_token_env"] = c.backend.http.auth_token_env;
      h["timeout_ms"] = c.backend.http.timeout.count();
      j["http"] = h;
      break;
    }
    case BackendKind::ris:
      j["backend"] = "ris";
      j["ris"] = ordered_json{{"path", c.backend.ris_path.generic_string()}};
      break;
  }
  return j.dump(2) + "\n";
}

catalog::SyntheticCatalogSpec parse_synthetic_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("spec is not valid JSON: ") + e.what());
  }
  return synthetic_from_json(j);
}

std::unique_ptr<catalog::Catalog> make_catalog(const BackendConfig& config,
                                               const std::filesystem::path& base_dir,
                                               catalog::HttpCatalog::LogSink log) {
  switch (config.kind) {
    case BackendKind::synthetic:
      return std::make_unique<catalog::SyntheticCatalog>(catalog::generate_synthetic(config.synthetic));
    case BackendKind::http:
      return std::make_unique<catalog::HttpCatalog>(config.http, std::move(log));
    case BackendKind::ris: {
      std::filesystem::path p = config.ris_path;
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      auto parsed = ris::parse(ris::read_file(p));
      return std::make_unique<catalog::InMemoryCatalog>(std::move(parsed.references));
    }
  }
  throw ConfigError("unknown backend");
}

}  // namespace algosr
