#pragma once

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "algosr/catalog.hpp"

namespace algosr::catalog {

struct HttpCatalogConfig {
  std::string base_url;
  int page_size = 50;
  int max_retries = 3;
  std::chrono::milliseconds min_request_interval{200};
  std::string auth_token_env;  // empty: no Authorization header
  std::chrono::milliseconds timeout{10000};

  /// Throws ConfigError.
  void validate() const;
  bool operator==(const HttpCatalogConfig&) const = default;
};

/// Runs requests one at a time, each starting at least `interval` after the
/// previous one finished, so a server sees gaps of at least `interval`
/// between consecutive requests no matter how many threads share it.
class RateLimiter {
 public:
  explicit RateLimiter(std::chrono::milliseconds interval) : interval_(interval) {}

  template <typename F>
  auto run(F&& request) {
    std::lock_guard lock(mu_);
    std::this_thread::sleep_until(next_);
    struct Rearm {
      RateLimiter& self;
      ~Rearm() { self.next_ = std::chrono::steady_clock::now() + self.interval_; }
    } rearm{*this};
    return request();
  }

 private:
  std::chrono::milliseconds interval_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point next_{};
};

/// JSON search endpoint client:
///   GET {base_url}/search?query=<kw>&limit=<n>&offset=<k*page_size>
/// answering `[{"title":..,"abstract":..,"keywords":[..]}, ...]`.
/// HTTP 429, 5xx and transport errors are retried with exponential backoff
/// starting at min_request_interval.
class HttpCatalog : public Catalog {
 public:
  using LogSink = std::function<void(const std::string&)>;

  /// Throws AuthMissing when auth_token_env names an unset variable, and
  /// ConfigError on an invalid config or URL.
  explicit HttpCatalog(HttpCatalogConfig config, LogSink log = {});

  std::vector<Reference> search(const QuerySpec& q) override;

  std::size_t retry_count() const noexcept { return retries_.load(); }
  std::size_t request_count() const noexcept { return requests_.load(); }

 private:
  std::string get_page(const std::string& path_and_query);

  HttpCatalogConfig config_;
  LogSink log_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::string token_;
  RateLimiter limiter_;
  std::atomic<std::size_t> retries_{0};
  std::atomic<std::size_t> requests_{0};
};

/// Maps one response body to references. Throws BackendUnavailable on a
/// payload that is not an array of objects.
std::vector<Reference> parse_search_response(const std::string& body);

std::string url_encode(const std::string& s);

/// One-shot search with a throwaway client.
std::vector<Reference> http_search(const HttpCatalogConfig& config, const QuerySpec& q);

}  // namespace algosr::catalog
