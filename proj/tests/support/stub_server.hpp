#pragma once

// Scriptable local search endpoint for the HTTP catalog tests.

#include <chrono>
#include <deque>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "algosr/catalog.hpp"
#include "httplib.h"
#include "json.hpp"

namespace algosr::testing {

struct LoggedRequest {
  std::chrono::steady_clock::time_point at;
  std::string path;
  std::string query;
  std::size_t limit = 0;
  std::size_t offset = 0;
  std::string authorization;
  int status = 200;
};

class StubCatalogServer {
 public:
  /// (query, limit, offset) -> JSON array body items.
  using Source = std::function<nlohmann::json(const std::string&, std::size_t, std::size_t)>;

  explicit StubCatalogServer(Source source, std::string prefix = "") : source_(std::move(source)) {
    server_.Get(prefix + "/search", [this](const httplib::Request& req, httplib::Response& res) {
      LoggedRequest log;
      log.at = std::chrono::steady_clock::now();
      log.path = req.path;
      log.query = req.get_param_value("query");
      log.limit = std::stoul(req.has_param("limit") ? req.get_param_value("limit") : "0");
      log.offset = std::stoul(req.has_param("offset") ? req.get_param_value("offset") : "0");
      log.authorization = req.get_header_value("Authorization");
      int status = 200;
      {
        std::lock_guard lock(mu_);
        if (!scripted_.empty()) {
          status = scripted_.front();
          scripted_.pop_front();
        }
      }
      log.status = status;
      if (status != 200) {
        res.status = status;
        res.set_content("{\"error\":\"scripted\"}", "application/json");
      } else {
        res.set_content(source_(log.query, log.limit, log.offset).dump(), "application/json");
      }
      std::lock_guard lock(mu_);
      log_.push_back(std::move(log));
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubCatalogServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  StubCatalogServer(const StubCatalogServer&) = delete;
  StubCatalogServer& operator=(const StubCatalogServer&) = delete;

  std::string base_url(const std::string& prefix = "") const {
    return "http://127.0.0.1:" + std::to_string(port_) + prefix;
  }

  /// Next requests answer with these statuses, in order, before normal service.
  void script(std::vector<int> statuses) {
    std::lock_guard lock(mu_);
    scripted_.insert(scripted_.end(), statuses.begin(), statuses.end());
  }

  std::vector<LoggedRequest> log() const {
    std::lock_guard lock(mu_);
    return log_;
  }

  void clear_log() {
    std::lock_guard lock(mu_);
    log_.clear();
  }

 private:
  Source source_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
  mutable std::mutex mu_;
  std::deque<int> scripted_;
  std::vector<LoggedRequest> log_;
};

/// Serves `count` numbered items for any query, honouring limit/offset.
inline StubCatalogServer::Source numbered_items(std::size_t count) {
  return [count](const std::string& q, std::size_t limit, std::size_t offset) {
    nlohmann::json items = nlohmann::json::array();
    for (std::size_t i = offset; i < count && i < offset + limit; ++i) {
      items.push_back({{"title", q + " study " + std::to_string(i)},
                       {"abstract", "about " + q},
                       {"keywords", {q}}});
    }
    return items;
  };
}

/// Serves an in-memory catalog's search results page by page.
inline StubCatalogServer::Source catalog_items(catalog::InMemoryCatalog& cat) {
  return [&cat](const std::string& q, std::size_t limit, std::size_t offset) {
    const auto all = cat.search({q, offset + limit});
    nlohmann::json items = nlohmann::json::array();
    for (std::size_t i = offset; i < all.size(); ++i) {
      const auto& r = all[i];
      nlohmann::json item{{"id", r.raw_id},
                          {"title", r.title},
                          {"abstract", r.abstract},
                          {"keywords", r.keywords},
                          {"type", r.ref_type}};
      if (r.year) item["year"] = *r.year;
      items.push_back(std::move(item));
    }
    return items;
  };
}

}  // namespace algosr::testing
