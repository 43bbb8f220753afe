#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "algosr/reference.hpp"
#include "algosr/textproc.hpp"

namespace algosr::catalog {

struct QuerySpec {
  std::string keyword;
  std::size_t limit = 50;
};

/// A keyword-search source of references. Implementations must allow
/// concurrent search() calls.
class Catalog {
 public:
  virtual ~Catalog() = default;

  /// At most q.limit references matching q.keyword. An unknown keyword
  /// yields an empty list. Throws BackendUnavailable.
  virtual std::vector<Reference> search(const QuerySpec& q) = 0;
};

/// Matches keywords as contiguous token runs against a fixed document list
/// and answers in document order.
class InMemoryCatalog : public Catalog {
 public:
  explicit InMemoryCatalog(std::vector<Reference> docs);

  std::vector<Reference> search(const QuerySpec& q) override;

  /// Ordinals of all documents containing the phrase, ascending.
  std::vector<std::size_t> matching_documents(const std::string& keyword) const;

  const std::vector<Reference>& documents() const noexcept { return docs_; }

  /// token -> ascending document ordinals.
  const std::unordered_map<std::string, std::vector<std::size_t>>& index() const noexcept {
    return index_;
  }

 private:
  std::vector<Reference> docs_;
  std::vector<std::vector<textproc::Sentence>> sentences_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

struct FetchResult {
  std::vector<Reference> references;  // deduplicated, first occurrence order
  std::vector<std::string> warnings;  // one per failed keyword
};

/// One search per keyword, run on up to `parallelism` threads; results are
/// concatenated in keyword order then backend order and deduplicated by
/// dedup key, so the outcome does not depend on scheduling. Keywords that
/// fail are reported as warnings as long as one succeeds; otherwise the
/// last BackendUnavailable is rethrown. Throws PreconditionViolation on an
/// empty keyword list.
FetchResult fetch_for_keywords(Catalog& backend, const std::vector<std::string>& keywords,
                               std::size_t per_kw_limit, std::size_t parallelism = 1);

}  // namespace algosr::catalog
