#include "algosr/http_catalog.hpp"

#include <cstdlib>
#include <thread>

#include "algosr/errors.hpp"
#include "httplib.h"
#include "json.hpp"

namespace algosr::catalog {

using nlohmann::json;

void HttpCatalogConfig::validate() const {
  if (base_url.empty()) throw ConfigError("http backend needs a base_url");
  if (page_size < 1) throw ConfigError("page_size must be >= 1");
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (min_request_interval.count() < 0) throw ConfigError("min_request_interval must be >= 0");
  if (timeout.count() < 1) throw ConfigError("timeout must be >= 1 ms");
}

std::string url_encode(const std::string& s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
        c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::vector<Reference> parse_search_response(const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw BackendUnavailable(std::string("malformed JSON response: ") + e.what());
  }
  if (!doc.is_array()) throw BackendUnavailable("search response is not a JSON array");
  auto text_field = [](const json& item, const char* key) -> std::string {
    auto it = item.find(key);
    if (it == item.end() || !it->is_string()) return {};
    return it->get<std::string>();
  };
  std::vector<Reference> out;
  out.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_object()) throw BackendUnavailable("search response item is not an object");
    Reference r;
    r.title = text_field(item, "title");
    r.abstract = text_field(item, "abstract");
    r.raw_id = text_field(item, "id");
    r.ref_type = text_field(item, "type");
    if (auto kw = item.find("keywords"); kw != item.end() && kw->is_array()) {
      for (const auto& k : *kw) {
        if (k.is_string()) r.keywords.push_back(k.get<std::string>());
      }
    }
    if (auto y = item.find("year"); y != item.end() && y->is_number_integer()) {
      r.year = y->get<int>();
    }
    out.push_back(canonicalize(std::move(r)));
  }
  return out;
}

HttpCatalog::HttpCatalog(HttpCatalogConfig config, LogSink log)
    : config_(std::move(config)), log_(std::move(log)), limiter_(config_.min_request_interval) {
  config_.validate();
  const std::string& url = config_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("base_url needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  if (path_start != std::string::npos) path_prefix_ = url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();

  if (!config_.auth_token_env.empty()) {
    const char* tok = std::getenv(config_.auth_token_env.c_str());
    if (tok == nullptr) throw AuthMissing(config_.auth_token_env);
    token_ = tok;
  }
}

std::string HttpCatalog::get_page(const std::string& target) {
  httplib::Client cli(scheme_host_port_);
  const auto secs = [](std::chrono::milliseconds ms) {
    return std::pair<time_t, time_t>(ms.count() / 1000, (ms.count() % 1000) * 1000);
  };
  auto [ts, tus] = secs(config_.timeout);
  cli.set_connection_timeout(ts, tus);
  cli.set_read_timeout(ts, tus);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  std::chrono::milliseconds backoff = config_.min_request_interval;
  for (int attempt = 0;; ++attempt) {
    auto res = limiter_.run([&] {
      ++requests_;
      return cli.Get(target, headers);
    });
    std::string failure;
    if (!res) {
      failure = "transport error: " + httplib::to_string(res.error());
    } else if (res->status == 200) {
      return res->body;
    } else if (res->status == 429 || res->status >= 500) {
      failure = "HTTP " + std::to_string(res->status);
    } else {
      throw BackendUnavailable("GET " + target + " failed with HTTP " + std::to_string(res->status));
    }
    if (attempt >= config_.max_retries) {
      throw BackendUnavailable("GET " + target + " failed after " + std::to_string(attempt) +
                               " retries: " + failure);
    }
    ++retries_;
    if (log_) {
      log_("retry " + std::to_string(attempt + 1) + "/" + std::to_string(config_.max_retries) +
           " for " + target + " (" + failure + ")");
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

std::vector<Reference> HttpCatalog::search(const QuerySpec& q) {
  std::vector<Reference> out;
  const std::size_t page = static_cast<std::size_t>(config_.page_size);
  for (std::size_t k = 0; out.size() < q.limit; ++k) {
    const std::size_t want = std::min(page, q.limit - out.size());
    const std::string target = path_prefix_ + "/search?query=" + url_encode(q.keyword) +
                               "&limit=" + std::to_string(want) +
                               "&offset=" + std::to_string(k * page);
    auto items = parse_search_response(get_page(target));
    if (items.empty()) break;
    for (auto& r : items) {
      if (out.size() >= q.limit) break;
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<Reference> http_search(const HttpCatalogConfig& config, const QuerySpec& q) {
  HttpCatalog cat(config);
  return cat.search(q);
}

}  // namespace algosr::catalog
