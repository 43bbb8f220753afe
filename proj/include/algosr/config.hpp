#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "algosr/catalog.hpp"
#include "algosr/http_catalog.hpp"
#include "algosr/synthetic_catalog.hpp"

namespace algosr {

enum class BackendKind { synthetic, http, ris };

struct BackendConfig {
  BackendKind kind = BackendKind::synthetic;
  catalog::SyntheticCatalogSpec synthetic;
  catalog::HttpCatalogConfig http;
  std::filesystem::path ris_path;  // catalog file for BackendKind::ris

  bool operator==(const BackendConfig& o) const;
};

struct RunConfig {
  std::vector<std::string> initial_keywords;
  std::size_t n_k = 10;
  int max_iterations = 30;
  int stability_window = 2;
  std::size_t per_kw_limit = 50;
  std::size_t fetch_parallelism = 1;
  BackendConfig backend;

  /// Throws ConfigError.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

/// Strict: unknown keys and wrong types are ConfigError.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);
/// Fixed key order, two-space indent, trailing newline.
std::string write_run_config(const RunConfig& config);

catalog::SyntheticCatalogSpec parse_synthetic_spec(const std::string& json_text);

/// Builds the configured backend. Relative RIS catalog paths resolve
/// against `base_dir`.
std::unique_ptr<catalog::Catalog> make_catalog(const BackendConfig& config,
                                               const std::filesystem::path& base_dir = {},
                                               catalog::HttpCatalog::LogSink log = {});

}  // namespace algosr
