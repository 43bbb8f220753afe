#pragma once

// Brute-force reference implementations used only by tests. They share the
// tokenizer with the library but count n-grams, supergrams and co-occurrence
// by padded substring search instead of hash tallies and phrase matchers.

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "algosr/reference.hpp"
#include "algosr/textproc.hpp"

namespace algosr::oracle {

inline std::string padded(const textproc::Sentence& s) {
  std::string out = " ";
  for (const auto& t : s) out += t + " ";
  return out;
}

inline std::int64_t count_occurrences(const std::string& hay, const std::string& needle) {
  std::int64_t n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

inline std::vector<std::string> padded_sentences(const Reference& r) {
  std::vector<std::string> out;
  for (const auto& s : textproc::reference_sentences(r)) out.push_back(padded(s));
  return out;
}

inline bool contains_phrase(const std::vector<std::string>& sentences, const std::string& phrase) {
  const std::string needle = " " + phrase + " ";
  for (const auto& s : sentences) {
    if (s.find(needle) != std::string::npos) return true;
  }
  return false;
}

struct Candidate {
  int length = 0;
  std::int64_t freq = 0;
  std::int64_t doc_freq = 0;
  double score = 0.0;
};

inline std::map<std::string, Candidate> candidates(const std::vector<const Reference*>& refs) {
  std::set<std::string> grams;
  std::vector<std::vector<std::string>> docs;
  for (const Reference* r : refs) {
    docs.push_back(padded_sentences(*r));
    for (const auto& s : textproc::reference_sentences(*r)) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        std::string g;
        for (std::size_t n = 1; n <= 3 && i + n <= s.size(); ++n) {
          g += (n > 1 ? " " : "") + s[i + n - 1];
          if (!textproc::is_stopword(s[i]) && !textproc::is_stopword(s[i + n - 1])) grams.insert(g);
        }
      }
    }
  }
  std::map<std::string, Candidate> out;
  for (const auto& g : grams) {
    Candidate c;
    c.length = static_cast<int>(textproc::phrase_tokens(g).size());
    for (const auto& d : docs) {
      std::int64_t in_doc = 0;
      for (const auto& s : d) in_doc += count_occurrences(s, " " + g + " ");
      c.freq += in_doc;
      if (in_doc > 0) ++c.doc_freq;
    }
    if (refs.size() >= 10 && c.doc_freq < 2) continue;
    out.emplace(g, c);
  }
  return out;
}

inline std::map<std::string, Candidate> c_value(std::map<std::string, Candidate> cands) {
  for (auto& [t, ct] : cands) {
    std::int64_t sum = 0, count = 0;
    for (const auto& [s, cs] : cands) {
      if (s == t) continue;
      if ((" " + s + " ").find(" " + t + " ") != std::string::npos) {
        sum += cs.freq;
        ++count;
      }
    }
    double base = static_cast<double>(ct.freq);
    if (count > 0) base -= static_cast<double>(sum) / static_cast<double>(count);
    ct.score = std::max(0.0, std::log2(static_cast<double>(ct.length) + 1.0) * base);
  }
  return cands;
}

inline std::vector<std::vector<std::int64_t>> cooccurrence(const std::vector<const Reference*>& refs,
                                                           const std::vector<std::string>& terms) {
  const std::size_t n = terms.size();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
  for (const Reference* r : refs) {
    const auto sents = padded_sentences(*r);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (contains_phrase(sents, terms[i]) && contains_phrase(sents, terms[j])) ++m[i][j];
      }
    }
  }
  return m;
}

}  // namespace algosr::oracle
