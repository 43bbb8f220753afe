#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "algosr/catalog.hpp"

namespace algosr::catalog {

/// Parameters of a seeded document collection with latent topics.
struct SyntheticCatalogSpec {
  std::uint64_t seed = 42;
  int n_topics = 5;
  int vocab_per_topic = 40;
  int n_docs = 500;
  int words_per_doc = 120;
  double cross_topic_leak = 0.1;  // chance a document borrows one phrase from topic t+1

  /// Throws ConfigError on counts < 1 or leak outside [0, 1].
  void validate() const;
  bool operator==(const SyntheticCatalogSpec&) const = default;
};

/// Documents are assigned to topics round-robin. Each topic owns a disjoint
/// vocabulary of pronounceable pseudo-words drawn with Zipf weights, so a
/// catalog is a pure function of its spec on every platform.
class SyntheticCatalog : public InMemoryCatalog {
 public:
  SyntheticCatalog(SyntheticCatalogSpec spec, std::vector<std::vector<std::string>> vocab,
                   std::vector<Reference> docs);

  const SyntheticCatalogSpec& spec() const noexcept { return spec_; }

  /// Topic vocabulary, most probable phrase first.
  const std::vector<std::string>& topic_vocabulary(int topic) const { return vocab_.at(topic); }
  int topic_of(std::size_t doc) const { return static_cast<int>(doc % spec_.n_topics); }

 private:
  SyntheticCatalogSpec spec_;
  std::vector<std::vector<std::string>> vocab_;
};

SyntheticCatalog generate_synthetic(const SyntheticCatalogSpec& spec);

/// `token<TAB>ordinal,ordinal,...` lines sorted by token; ordinals are 0-based
/// positions in the catalog's document order.
std::string write_index(const InMemoryCatalog& catalog);

}  // namespace algosr::catalog
