#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "algosr/reference.hpp"

namespace algosr::textproc {

/// Longest generated n-gram.
inline constexpr int kMaxNgram = 3;

/// A term is stored as its normalized tokens joined by single spaces. Tokens
/// are [a-z0-9]+, so string order equals token-list order.
using Phrase = std::string;

using Sentence = std::vector<std::string>;

bool is_stopword(std::string_view token);
std::size_t stopword_count();

/// Lowercase, ASCII-folded tokens split on non-alphanumerics, with tokens of
/// length 1 and all-digit tokens dropped. Stopwords are kept.
std::vector<std::string> normalize_text(std::string_view text);

/// normalize_text() split at `.`, `!`, `?` and `;`. Empty sentences dropped.
std::vector<Sentence> split_sentences(std::string_view text);

/// Title, abstract and each keyword phrase, each split into sentences. This
/// is the text every phrase match and n-gram count runs over.
std::vector<Sentence> reference_sentences(const Reference& r);

/// Normalizes a free-text phrase into Phrase form (may be empty).
Phrase normalize_phrase(std::string_view text);

std::vector<std::string> phrase_tokens(const Phrase& p);

struct TermCandidate {
  Phrase phrase;
  int length = 0;  // tokens
  std::int64_t freq = 0;
  std::int64_t doc_freq = 0;
  double score = 0.0;
};

/// All 1..3-grams not crossing sentence boundaries and without a stopword at
/// either edge, tallied over the corpus. When the corpus has at least 10
/// references, candidates found in a single reference are dropped. Sorted by
/// phrase. Throws EmptyCorpus.
std::vector<TermCandidate> extract_candidates(const Corpus& corpus);
std::vector<TermCandidate> extract_candidates(const std::vector<const Reference*>& refs);

/// C-value: log2(|t|+1) * (freq(t) - mean freq of the candidates strictly
/// containing t), mean term omitted when nothing contains t; clamped at 0.
std::vector<TermCandidate> score_terms(std::vector<TermCandidate> candidates);

struct ScoredTerm {
  Phrase phrase;
  double score = 0.0;
  bool operator==(const ScoredTerm&) const = default;
};

struct KeywordSet {
  std::vector<ScoredTerm> terms;
  std::size_t n_k = 0;

  std::size_t size() const noexcept { return terms.size(); }
  bool empty() const noexcept { return terms.empty(); }
  std::vector<Phrase> phrases() const;
};

/// Strict total order used for ranking: score descending, phrase ascending.
bool ranks_before(const ScoredTerm& a, const ScoredTerm& b);

/// Top n_k scored candidates. Throws PreconditionViolation if n_k == 0.
KeywordSet select_keywords(const std::vector<TermCandidate>& scored, std::size_t n_k);

/// extract_candidates -> score_terms -> select_keywords.
KeywordSet extract_keywords(const Corpus& corpus, std::size_t n_k);

/// `score<TAB>phrase` per line, six decimals.
std::string write_keywords(const KeywordSet& k);
/// Inverse of write_keywords(). Throws Error on a malformed line.
KeywordSet parse_keywords(std::string_view text, std::size_t n_k);

/// Finds which of a fixed list of phrases occur (as contiguous token runs
/// inside one sentence) in a reference.
class PhraseMatcher {
 public:
  explicit PhraseMatcher(const std::vector<Phrase>& phrases);

  /// Sorted, duplicate-free indices into the constructor's phrase list.
  std::vector<std::size_t> matches(const Reference& r) const;
  std::vector<std::size_t> matches(const std::vector<Sentence>& sentences) const;

  std::size_t size() const noexcept { return count_; }

 private:
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
  std::size_t max_len_ = 0;
  std::size_t count_ = 0;
};

/// Symmetric reference-level co-occurrence counts; diagonal is doc_freq.
class CooccurrenceMatrix {
 public:
  CooccurrenceMatrix() = default;
  explicit CooccurrenceMatrix(std::vector<Phrase> terms);

  const std::vector<Phrase>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  std::int64_t at(std::size_t i, std::size_t j) const { return counts_[i * terms_.size() + j]; }
  void add(std::size_t i, std::size_t j, std::int64_t v) { counts_[i * terms_.size() + j] += v; }

  /// Sum of all entries off the diagonal (both triangles).
  std::int64_t off_diagonal_total() const;

 private:
  std::vector<Phrase> terms_;
  std::vector<std::int64_t> counts_;
};

/// Throws PreconditionViolation if terms is empty or holds duplicates.
CooccurrenceMatrix cooccurrences(const Corpus& corpus, const std::vector<Phrase>& terms);
CooccurrenceMatrix cooccurrences(const std::vector<const Reference*>& refs,
                                 const std::vector<Phrase>& terms);

}  // namespace algosr::textproc
