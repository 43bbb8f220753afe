#include "algosr/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <set>
#include <thread>

#include "algosr/errors.hpp"

namespace algosr::catalog {

InMemoryCatalog::InMemoryCatalog(std::vector<Reference> docs) : docs_(std::move(docs)) {
  sentences_.reserve(docs_.size());
  for (std::size_t d = 0; d < docs_.size(); ++d) {
    sentences_.push_back(textproc::reference_sentences(docs_[d]));
    std::set<std::string> tokens;
    for (const auto& s : sentences_.back()) tokens.insert(s.begin(), s.end());
    for (const auto& t : tokens) index_[t].push_back(d);
  }
}

std::vector<std::size_t> InMemoryCatalog::matching_documents(const std::string& keyword) const {
  const auto toks = textproc::normalize_text(keyword);
  if (toks.empty()) return {};
  const std::vector<std::size_t>* rarest = nullptr;
  for (const auto& t : toks) {
    auto it = index_.find(t);
    if (it == index_.end()) return {};
    if (rarest == nullptr || it->second.size() < rarest->size()) rarest = &it->second;
  }
  std::vector<std::size_t> out;
  for (std::size_t d : *rarest) {
    bool found = false;
    for (const auto& s : sentences_[d]) {
      if (s.size() < toks.size()) continue;
      if (std::search(s.begin(), s.end(), toks.begin(), toks.end()) != s.end()) {
        found = true;
        break;
      }
    }
    if (found) out.push_back(d);
  }
  return out;
}

std::vector<Reference> InMemoryCatalog::search(const QuerySpec& q) {
  std::vector<Reference> out;
  for (std::size_t d : matching_documents(q.keyword)) {
    if (out.size() >= q.limit) break;
    out.push_back(docs_[d]);
  }
  return out;
}

FetchResult fetch_for_keywords(Catalog& backend, const std::vector<std::string>& keywords,
                               std::size_t per_kw_limit, std::size_t parallelism) {
  if (keywords.empty()) throw PreconditionViolation("fetch_for_keywords needs at least one keyword");
  const std::size_t n = keywords.size();
  std::vector<std::optional<std::vector<Reference>>> results(n);
  std::vector<std::string> errors(n);
  std::vector<std::exception_ptr> fatal(n);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = backend.search(QuerySpec{keywords[i], per_kw_limit});
      } catch (const BackendUnavailable& e) {
        errors[i] = e.what();
      } catch (...) {
        fatal[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, n);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& f : fatal) {
    if (f) std::rethrow_exception(f);
  }

  FetchResult out;
  std::set<DedupKey> seen;
  bool any_ok = false;
  std::string last_error;
  for (std::size_t i = 0; i < n; ++i) {
    if (!results[i]) {
      out.warnings.push_back("keyword '" + keywords[i] + "': " + errors[i]);
      last_error = errors[i];
      continue;
    }
    any_ok = true;
    for (auto& r : *results[i]) {
      if (!is_valid(r)) continue;
      if (seen.insert(dedup_key(r)).second) out.references.push_back(std::move(r));
    }
  }
  if (!any_ok) throw BackendUnavailable("every keyword request failed; last error: " + last_error);
  return out;
}

}  // namespace algosr::catalog
