#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace algosr {

/// One bibliographic record. Only title, abstract and keywords feed the
/// corpus-expansion algorithm; year and type are carried along.
struct Reference {
  std::string raw_id;  // backend-assigned, not persisted
  std::string title;
  std::string abstract;
  std::vector<std::string> keywords;
  std::optional<int> year;
  std::string ref_type = "GEN";

  /// Field-wise equality over everything persisted to RIS (raw_id excluded).
  bool same_content(const Reference& other) const;
};

/// Brings a record to canonical form: ASCII-folded, whitespace collapsed,
/// empty/duplicate keywords removed (case-insensitive, first kept), empty
/// type replaced by GEN. Idempotent.
Reference canonicalize(Reference r);

/// True when title or abstract carries text after whitespace normalization.
bool is_valid(const Reference& r);

/// Normalized title used for set membership.
class DedupKey {
 public:
  /// Wraps an already-normalized key; use dedup_key() to derive one.
  explicit DedupKey(std::string key);

  const std::string& str() const noexcept { return key_; }
  auto operator<=>(const DedupKey&) const = default;

 private:
  std::string key_;
};

/// Lowercased, diacritic-folded, punctuation-free title; "ab:" plus 16 hex
/// digits of the normalized abstract's FNV-1a hash when the title is empty.
DedupKey dedup_key(const Reference& r);

/// Deduplicated reference set with the iteration each entry was first added.
class Corpus {
 public:
  struct Entry {
    Reference reference;
    int iteration;
  };

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  bool contains(const DedupKey& k) const { return entries_.contains(k); }

  /// Inserts unless the key is present (first writer wins). Returns whether
  /// the reference was added. Caller guarantees iteration >= 1.
  bool insert(Reference r, int iteration);

  const Reference* find(const DedupKey& k) const;
  int provenance(const DedupKey& k) const;

  /// Ordered by dedup key.
  const std::map<DedupKey, Entry>& entries() const noexcept { return entries_; }

  /// References in dedup-key order.
  std::vector<const Reference*> references() const;

  /// Same keys, provenance and persisted fields.
  bool operator==(const Corpus& other) const;

 private:
  std::map<DedupKey, Entry> entries_;
};

struct MergeResult {
  Corpus corpus;
  std::size_t added = 0;
};

/// Set union keyed by dedup_key; existing entries keep fields and provenance.
/// Invalid references are ignored. Throws PreconditionViolation if
/// iteration < 1.
MergeResult merge(Corpus corpus, const std::vector<Reference>& refs, int iteration);

/// In-place variant of merge(); returns the number of new keys.
std::size_t merge_into(Corpus& corpus, const std::vector<Reference>& refs, int iteration);

}  // namespace algosr
