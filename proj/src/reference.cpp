#include "algosr/reference.hpp"

#include <set>
#include <utility>

#include "algosr/errors.hpp"
#include "algosr/text.hpp"

namespace algosr {

bool Reference::same_content(const Reference& o) const {
  return title == o.title && abstract == o.abstract && keywords == o.keywords &&
         year == o.year && ref_type == o.ref_type;
}

Reference canonicalize(Reference r) {
  r.title = text::collapse_whitespace(text::fold_ascii(r.title));
  r.abstract = text::collapse_whitespace(text::fold_ascii(r.abstract));
  r.ref_type = text::collapse_whitespace(text::fold_ascii(r.ref_type));
  if (r.ref_type.empty()) r.ref_type = "GEN";
  std::vector<std::string> kws;
  std::set<std::string> seen;
  for (const auto& kw : r.keywords) {
    std::string k = text::collapse_whitespace(text::fold_ascii(kw));
    if (k.empty()) continue;
    if (!seen.insert(text::to_lower_ascii(k)).second) continue;
    kws.push_back(std::move(k));
  }
  r.keywords = std::move(kws);
  return r;
}

bool is_valid(const Reference& r) {
  return !text::collapse_whitespace(r.title).empty() ||
         !text::collapse_whitespace(r.abstract).empty();
}

DedupKey::DedupKey(std::string key) : key_(std::move(key)) {}

DedupKey dedup_key(const Reference& r) {
  std::string key = text::normalize_key_text(r.title);
  if (!key.empty()) return DedupKey(std::move(key));
  const std::string ab = text::normalize_key_text(r.abstract);
  return DedupKey("ab:" + text::hex16(text::fnv1a64(ab)));
}

bool Corpus::insert(Reference r, int iteration) {
  DedupKey key = dedup_key(r);
  if (entries_.contains(key)) return false;
  entries_.emplace(std::move(key), Entry{std::move(r), iteration});
  return true;
}

const Reference* Corpus::find(const DedupKey& k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? nullptr : &it->second.reference;
}

int Corpus::provenance(const DedupKey& k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? 0 : it->second.iteration;
}

std::vector<const Reference*> Corpus::references() const {
  std::vector<const Reference*> out;
  out.reserve(entries_.size());
  for (const auto& [k, e] : entries_) out.push_back(&e.reference);
  return out;
}

bool Corpus::operator==(const Corpus& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  for (; a != entries_.end(); ++a, ++b) {
    if (a->first != b->first || a->second.iteration != b->second.iteration ||
        !a->second.reference.same_content(b->second.reference)) {
      return false;
    }
  }
  return true;
}

std::size_t merge_into(Corpus& corpus, const std::vector<Reference>& refs, int iteration) {
  if (iteration < 1) throw PreconditionViolation("merge iteration must be >= 1");
  std::size_t added = 0;
  for (const auto& r : refs) {
    if (!is_valid(r)) continue;
    if (corpus.insert(r, iteration)) ++added;
  }
  return added;
}

MergeResult merge(Corpus corpus, const std::vector<Reference>& refs, int iteration) {
  MergeResult out;
  out.added = merge_into(corpus, refs, iteration);
  out.corpus = std::move(corpus);
  return out;
}

}  // namespace algosr
