#include "algosr/synthetic_catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string_view>

#include "algosr/errors.hpp"

namespace algosr::catalog {
namespace {

constexpr std::array<std::string_view, 16> kOnsets = {"b", "d", "f", "g", "k", "l", "m", "n",
                                                      "p", "r", "s", "t", "v", "z", "br", "st"};
constexpr std::array<std::string_view, 5> kVowels = {"a", "e", "i", "o", "u"};
constexpr std::array<std::string_view, 6> kCodas = {"", "", "n", "r", "l", "s"};
constexpr double kZipfExponent = 1.0;

// std distributions are implementation-defined; these are not.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::size_t uniform(std::size_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do {
      v = rng_();
    } while (v >= limit);
    return static_cast<std::size_t>(v % n);
  }

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::size_t weighted(const std::vector<double>& cumulative) {
    const double u = unit() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                 cumulative.size() - 1);
  }

 private:
  std::mt19937_64 rng_;
};

std::string pseudo_word(Sampler& s) {
  std::string w;
  const std::size_t syllables = 2 + s.uniform(2);
  for (std::size_t k = 0; k < syllables; ++k) {
    w += kOnsets[s.uniform(kOnsets.size())];
    w += kVowels[s.uniform(kVowels.size())];
    if (k + 1 == syllables || s.uniform(3) == 0) w += kCodas[s.uniform(kCodas.size())];
  }
  return w;
}

std::string capitalized(std::string w) {
  if (!w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

}  // namespace

void SyntheticCatalogSpec::validate() const {
  if (n_topics < 1 || vocab_per_topic < 1 || n_docs < 1 || words_per_doc < 1) {
    throw ConfigError("synthetic catalog counts must all be >= 1");
  }
  if (!(cross_topic_leak >= 0.0 && cross_topic_leak <= 1.0)) {
    throw ConfigError("cross_topic_leak must lie in [0, 1]");
  }
}

SyntheticCatalog::SyntheticCatalog(SyntheticCatalogSpec spec,
                                   std::vector<std::vector<std::string>> vocab,
                                   std::vector<Reference> docs)
    : InMemoryCatalog(std::move(docs)), spec_(spec), vocab_(std::move(vocab)) {}

SyntheticCatalog generate_synthetic(const SyntheticCatalogSpec& spec) {
  spec.validate();
  Sampler rng(spec.seed);

  std::vector<std::vector<std::string>> vocab(spec.n_topics);
  std::set<std::string> used;
  for (auto& topic : vocab) {
    while (topic.size() < static_cast<std::size_t>(spec.vocab_per_topic)) {
      std::string w = pseudo_word(rng);
      if (w.size() < 4 || textproc::is_stopword(w) || !used.insert(w).second) continue;
      topic.push_back(std::move(w));
    }
  }

  std::vector<double> cumulative(spec.vocab_per_topic);
  double acc = 0.0;
  for (int r = 0; r < spec.vocab_per_topic; ++r) {
    acc += 1.0 / std::pow(static_cast<double>(r + 1), kZipfExponent);
    cumulative[r] = acc;
  }

  std::vector<Reference> docs;
  docs.reserve(spec.n_docs);
  for (int d = 0; d < spec.n_docs; ++d) {
    const int topic = d % spec.n_topics;
    const auto& words = vocab[topic];
    const auto& neighbour = vocab[(topic + 1) % spec.n_topics];

    Reference r;
    r.raw_id = "syn-" + std::to_string(d);
    r.ref_type = "JOUR";
    for (int k = 0; k < 3; ++k) {
      const std::string& w = words[rng.weighted(cumulative)];
      r.title += k == 0 ? capitalized(w) : " " + w;
    }
    r.title += " (" + std::to_string(d + 1) + ")";

    std::vector<std::string> body(spec.words_per_doc);
    for (auto& w : body) w = words[rng.weighted(cumulative)];
    if (rng.unit() < spec.cross_topic_leak) {
      const std::size_t pos = rng.uniform(body.size());
      body[pos] = neighbour[rng.uniform(neighbour.size())];
    }
    std::size_t until_stop = 8 + rng.uniform(8);
    bool sentence_start = true;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i > 0) r.abstract += ' ';
      r.abstract += sentence_start ? capitalized(body[i]) : body[i];
      sentence_start = false;
      if (--until_stop == 0 || i + 1 == body.size()) {
        r.abstract += '.';
        sentence_start = true;
        until_stop = 8 + rng.uniform(8);
      }
    }
    r.year = 1990 + static_cast<int>(rng.uniform(30));
    docs.push_back(std::move(r));
  }
  return SyntheticCatalog(spec, std::move(vocab), std::move(docs));
}

std::string write_index(const InMemoryCatalog& catalog) {
  std::map<std::string, const std::vector<std::size_t>*> sorted;
  for (const auto& [tok, docs] : catalog.index()) sorted.emplace(tok, &docs);
  std::string out;
  for (const auto& [tok, docs] : sorted) {
    out += tok;
    out += '\t';
    for (std::size_t i = 0; i < docs->size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string((*docs)[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace algosr::catalog
