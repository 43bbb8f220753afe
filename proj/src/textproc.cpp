#include "algosr/textproc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "algosr/errors.hpp"
#include "algosr/text.hpp"

namespace algosr::textproc {
namespace {

const std::unordered_set<std::string>& stopword_set() {
  static const std::unordered_set<std::string> words = [] {
    static constexpr std::string_view kData =
#include "stopwords_data.inc"
        ;
    std::unordered_set<std::string> out;
    std::size_t pos = 0;
    while (pos < kData.size()) {
      std::size_t eol = kData.find('\n', pos);
      if (eol == std::string_view::npos) eol = kData.size();
      std::string line = text::collapse_whitespace(kData.substr(pos, eol - pos));
      pos = eol + 1;
      if (line.empty() || line[0] == '#') continue;
      out.insert(std::move(line));
    }
    return out;
  }();
  return words;
}

bool keep_token(const std::string& tok) {
  if (tok.size() < 2) return false;
  return !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_sentence_end(char c) { return c == '.' || c == '!' || c == '?' || c == ';'; }

std::string join(const Sentence& s, std::size_t begin, std::size_t len) {
  std::string out = s[begin];
  for (std::size_t k = 1; k < len; ++k) {
    out += ' ';
    out += s[begin + k];
  }
  return out;
}

struct Tally {
  int length = 0;
  std::int64_t freq = 0;
  std::int64_t doc_freq = 0;
};

}  // namespace

bool is_stopword(std::string_view token) { return stopword_set().contains(std::string(token)); }
std::size_t stopword_count() { return stopword_set().size(); }

std::vector<Sentence> split_sentences(std::string_view raw) {
  const std::string lowered = text::to_lower_ascii(text::fold_ascii(raw));
  std::vector<Sentence> out;
  Sentence current;
  std::string tok;
  auto flush_token = [&] {
    if (keep_token(tok)) current.push_back(tok);
    tok.clear();
  };
  auto flush_sentence = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  for (char c : lowered) {
    if (text::is_ascii_alnum(c)) {
      tok.push_back(c);
      continue;
    }
    flush_token();
    if (is_sentence_end(c)) flush_sentence();
  }
  flush_token();
  flush_sentence();
  return out;
}

std::vector<std::string> normalize_text(std::string_view raw) {
  std::vector<std::string> out;
  for (auto& s : split_sentences(raw)) {
    for (auto& t : s) out.push_back(std::move(t));
  }
  return out;
}

std::vector<Sentence> reference_sentences(const Reference& r) {
  std::vector<Sentence> out = split_sentences(r.title);
  for (auto& s : split_sentences(r.abstract)) out.push_back(std::move(s));
  for (const auto& kw : r.keywords) {
    for (auto& s : split_sentences(kw)) out.push_back(std::move(s));
  }
  return out;
}

Phrase normalize_phrase(std::string_view raw) {
  const auto toks = normalize_text(raw);
  if (toks.empty()) return {};
  return join(toks, 0, toks.size());
}

std::vector<std::string> phrase_tokens(const Phrase& p) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= p.size()) {
    std::size_t sp = p.find(' ', pos);
    if (sp == std::string::npos) sp = p.size();
    if (sp > pos) out.emplace_back(p.substr(pos, sp - pos));
    pos = sp + 1;
  }
  return out;
}

std::vector<TermCandidate> extract_candidates(const Corpus& corpus) {
  return extract_candidates(corpus.references());
}

std::vector<TermCandidate> extract_candidates(const std::vector<const Reference*>& refs) {
  if (refs.empty()) throw EmptyCorpus();
  std::unordered_map<std::string, Tally> tallies;
  std::unordered_set<std::string> seen_in_doc;
  for (const Reference* r : refs) {
    seen_in_doc.clear();
    for (const Sentence& s : reference_sentences(*r)) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (is_stopword(s[i])) continue;
        for (std::size_t n = 1; n <= static_cast<std::size_t>(kMaxNgram) && i + n <= s.size(); ++n) {
          if (is_stopword(s[i + n - 1])) continue;
          std::string gram = join(s, i, n);
          Tally& t = tallies[gram];
          t.length = static_cast<int>(n);
          ++t.freq;
          if (seen_in_doc.insert(std::move(gram)).second) ++t.doc_freq;
        }
      }
    }
  }
  const bool noise_floor = refs.size() >= 10;
  std::vector<TermCandidate> out;
  out.reserve(tallies.size());
  for (auto& [phrase, t] : tallies) {
    if (noise_floor && t.doc_freq < 2) continue;
    out.push_back(TermCandidate{phrase, t.length, t.freq, t.doc_freq, 0.0});
  }
  std::sort(out.begin(), out.end(),
            [](const TermCandidate& a, const TermCandidate& b) { return a.phrase < b.phrase; });
  return out;
}

std::vector<TermCandidate> score_terms(std::vector<TermCandidate> candidates) {
  std::unordered_map<std::string, std::size_t> by_phrase;
  by_phrase.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) by_phrase.emplace(candidates[i].phrase, i);

  std::vector<std::int64_t> super_freq(candidates.size(), 0);
  std::vector<std::int64_t> super_count(candidates.size(), 0);
  std::vector<std::size_t> subs;
  for (const auto& cand : candidates) {
    if (cand.length < 2) continue;
    const auto toks = phrase_tokens(cand.phrase);
    subs.clear();
    for (std::size_t len = 1; len < toks.size(); ++len) {
      for (std::size_t i = 0; i + len <= toks.size(); ++i) {
        auto it = by_phrase.find(join(toks, i, len));
        if (it != by_phrase.end()) subs.push_back(it->second);
      }
    }
    std::sort(subs.begin(), subs.end());
    subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
    for (std::size_t t : subs) {
      super_freq[t] += cand.freq;
      ++super_count[t];
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    auto& c = candidates[i];
    double base = static_cast<double>(c.freq);
    if (super_count[i] > 0) {
      base -= static_cast<double>(super_freq[i]) / static_cast<double>(super_count[i]);
    }
    c.score = std::max(0.0, std::log2(static_cast<double>(c.length) + 1.0) * base);
  }
  return candidates;
}

std::vector<Phrase> KeywordSet::phrases() const {
  std::vector<Phrase> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.phrase);
  return out;
}

bool ranks_before(const ScoredTerm& a, const ScoredTerm& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.phrase < b.phrase;
}

KeywordSet select_keywords(const std::vector<TermCandidate>& scored, std::size_t n_k) {
  if (n_k == 0) throw PreconditionViolation("n_k must be >= 1");
  std::vector<ScoredTerm> all;
  all.reserve(scored.size());
  for (const auto& c : scored) all.push_back({c.phrase, c.score});
  std::sort(all.begin(), all.end(), ranks_before);
  std::vector<ScoredTerm> top;
  std::unordered_set<std::string> seen;
  for (auto& t : all) {
    if (top.size() == n_k) break;
    if (seen.insert(t.phrase).second) top.push_back(std::move(t));
  }
  return KeywordSet{std::move(top), n_k};
}

KeywordSet extract_keywords(const Corpus& corpus, std::size_t n_k) {
  return select_keywords(score_terms(extract_candidates(corpus)), n_k);
}

std::string write_keywords(const KeywordSet& k) {
  std::string out;
  char buf[64];
  for (const auto& t : k.terms) {
    std::snprintf(buf, sizeof buf, "%.6f\t", t.score);
    out += buf;
    out += t.phrase;
    out += '\n';
  }
  return out;
}

KeywordSet parse_keywords(std::string_view input, std::size_t n_k) {
  KeywordSet out;
  out.n_k = n_k;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < input.size()) {
    std::size_t eol = input.find('\n', pos);
    if (eol == std::string_view::npos) eol = input.size();
    std::string_view line = input.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab + 1 >= line.size()) {
      throw Error("keyword line " + std::to_string(line_no) + ": expected 'score<TAB>phrase'");
    }
    double score = 0.0;
    auto [p, ec] = std::from_chars(line.data(), line.data() + tab, score);
    if (ec != std::errc() || p != line.data() + tab) {
      throw Error("keyword line " + std::to_string(line_no) + ": bad score");
    }
    out.terms.push_back({std::string(line.substr(tab + 1)), score});
  }
  return out;
}

PhraseMatcher::PhraseMatcher(const std::vector<Phrase>& phrases) : count_(phrases.size()) {
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    const Phrase norm = normalize_phrase(phrases[i]);
    if (norm.empty()) continue;
    max_len_ = std::max(max_len_, phrase_tokens(norm).size());
    index_[norm].push_back(i);
  }
}

std::vector<std::size_t> PhraseMatcher::matches(const Reference& r) const {
  return matches(reference_sentences(r));
}

std::vector<std::size_t> PhraseMatcher::matches(const std::vector<Sentence>& sentences) const {
  std::vector<std::size_t> out;
  for (const Sentence& s : sentences) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      std::string gram;
      for (std::size_t n = 1; n <= max_len_ && i + n <= s.size(); ++n) {
        if (n > 1) gram += ' ';
        gram += s[i + n - 1];
        auto it = index_.find(gram);
        if (it != index_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CooccurrenceMatrix::CooccurrenceMatrix(std::vector<Phrase> terms)
    : terms_(std::move(terms)), counts_(terms_.size() * terms_.size(), 0) {}

std::int64_t CooccurrenceMatrix::off_diagonal_total() const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (i != j) total += at(i, j);
    }
  }
  return total;
}

CooccurrenceMatrix cooccurrences(const Corpus& corpus, const std::vector<Phrase>& terms) {
  return cooccurrences(corpus.references(), terms);
}

CooccurrenceMatrix cooccurrences(const std::vector<const Reference*>& refs,
                                 const std::vector<Phrase>& terms) {
  if (terms.empty()) throw PreconditionViolation("co-occurrence needs at least one term");
  std::unordered_set<std::string> uniq(terms.begin(), terms.end());
  if (uniq.size() != terms.size()) throw PreconditionViolation("co-occurrence terms must be distinct");

  CooccurrenceMatrix m(terms);
  const PhraseMatcher matcher(terms);
  for (const Reference* r : refs) {
    const auto hit = matcher.matches(*r);
    for (std::size_t a = 0; a < hit.size(); ++a) {
      m.add(hit[a], hit[a], 1);
      for (std::size_t b = a + 1; b < hit.size(); ++b) {
        m.add(hit[a], hit[b], 1);
        m.add(hit[b], hit[a], 1);
      }
    }
  }
  return m;
}

}  // namespace algosr::textproc
