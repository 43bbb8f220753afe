#include "algosr/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <thread>
#include <tuple>

#include "algosr/errors.hpp"
#include "algosr/state_io.hpp"

namespace algosr::metrics {
namespace {

bool content_less(const Reference& a, const Reference& b) {
  return std::tie(a.title, a.abstract, a.keywords, a.year, a.ref_type) <
         std::tie(b.title, b.abstract, b.keywords, b.year, b.ref_type);
}

void require_finished(const engine::RunState& s) {
  if (s.status == engine::Status::running) throw PreconditionViolation("proximity needs finished runs");
  if (s.keywords.empty()) throw EmptyKeywords();
}

std::size_t parse_uint(const std::string& s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) throw Error("bad integer '" + s + "'");
  return v;
}

}  // namespace

double consistency(const textproc::CooccurrenceMatrix& c) {
  const std::size_t n = c.size();
  if (n < 2) throw TooFewKeywords();
  double dissimilarity = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto denom = std::min(c.at(i, i), c.at(j, j));
      dissimilarity += denom == 0 ? 1.0 : 1.0 - static_cast<double>(c.at(i, j)) / static_cast<double>(denom);
      ++pairs;
    }
  }
  return 1.0 - dissimilarity / static_cast<double>(pairs);
}

double consistency(const Corpus& corpus, const textproc::KeywordSet& keywords) {
  if (keywords.size() < 2) throw TooFewKeywords();
  return consistency(textproc::cooccurrences(corpus, keywords.phrases()));
}

Corpus corpus_union(const Corpus& a, const Corpus& b) {
  std::map<DedupKey, const Corpus::Entry*> chosen;
  for (const Corpus* c : {&a, &b}) {
    for (const auto& [key, e] : c->entries()) {
      auto [it, inserted] = chosen.emplace(key, &e);
      if (!inserted && content_less(e.reference, it->second->reference)) it->second = &e;
    }
  }
  Corpus out;
  for (const auto& [key, e] : chosen) out.insert(e->reference, std::max(1, e->iteration));
  return out;
}

double proximity(const engine::RunState& a, const engine::RunState& b, ProximityMode mode) {
  require_finished(a);
  require_finished(b);
  const auto ka = a.keywords.phrases();
  const auto kb = b.keywords.phrases();
  std::vector<textproc::Phrase> all = ka;
  all.insert(all.end(), kb.begin(), kb.end());
  const textproc::PhraseMatcher matcher(all);
  const Corpus u = corpus_union(a.corpus, b.corpus);

  const std::size_t na = ka.size();
  const std::size_t nb = kb.size();
  std::vector<std::int64_t> pair_counts(na * nb, 0);
  std::vector<std::size_t> in_a, in_b;
  for (const auto& [key, e] : u.entries()) {
    in_a.clear();
    in_b.clear();
    for (std::size_t idx : matcher.matches(e.reference)) {
      if (idx < na) {
        in_a.push_back(idx);
      } else {
        in_b.push_back(idx - na);
      }
    }
    for (std::size_t i : in_a) {
      for (std::size_t j : in_b) ++pair_counts[i * nb + j];
    }
  }
  std::int64_t total = 0;
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      if (ka[i] == kb[j]) continue;
      const auto v = pair_counts[i * nb + j];
      total += mode == ProximityMode::pairs ? (v > 0 ? 1 : 0) : v;
    }
  }
  double denom = static_cast<double>(na) * static_cast<double>(nb);
  if (mode == ProximityMode::counts) denom *= static_cast<double>(std::max<std::size_t>(1, u.size()));
  return static_cast<double>(total) / denom;
}

ProximityMatrix proximity_matrix(const std::vector<engine::RunState>& runs, const std::vector<std::string>& labels,
                                 ProximityMode mode, std::size_t parallelism) {
  if (runs.size() < 2) throw PreconditionViolation("a proximity matrix needs at least two runs");
  if (labels.size() != runs.size()) throw PreconditionViolation("one label per run");
  const std::size_t n = runs.size();
  ProximityMatrix m;
  m.labels = labels;
  m.values.assign(n, std::vector<double>(n, 0.0));
  m.totals.assign(n, 0);

  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) jobs.emplace_back(i, j);
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs.size() + n);
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size() + n; k = next++) {
      try {
        if (k < jobs.size()) {
          const auto [i, j] = jobs[k];
          m.values[i][j] = proximity(runs[i], runs[j], mode);
        } else {
          const std::size_t i = k - jobs.size();
          require_finished(runs[i]);
          m.totals[i] = textproc::cooccurrences(runs[i].corpus, runs[i].keywords.phrases()).off_diagonal_total();
        }
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < std::max<std::size_t>(1, parallelism); ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 0; i < n; ++i) {
    m.values[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) m.values[j][i] = m.values[i][j];
  }
  return m;
}

std::string write_proximity_csv(const ProximityMatrix& m) {
  std::string out = "run";
  for (const auto& l : m.labels) out += ',' + l;
  out += '\n';
  char buf[32];
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out += m.labels[i];
    for (double v : m.values[i]) {
      std::snprintf(buf, sizeof buf, ",%.4f", v);
      out += buf;
    }
    out += '\n';
  }
  out += "totals";
  for (auto w : m.totals) out += ',' + std::to_string(w);
  out += '\n';
  return out;
}

std::map<std::size_t, std::size_t> SensitivityResult::summary() const {
  std::map<std::size_t, std::size_t> out;
  for (const auto& r : runs) {
    if (r.state) out[r.n_k] = r.state->corpus.size();
  }
  return out;
}

SensitivityResult sensitivity_sweep(const RunConfig& base, const std::vector<std::size_t>& n_k_values,
                                    catalog::Catalog& backend, std::size_t parallelism) {
  if (n_k_values.empty()) throw PreconditionViolation("sweep needs at least one n_k value");
  SensitivityResult result;
  result.n_k_values = n_k_values;
  result.runs.resize(n_k_values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n_k_values.size(); i = next++) {
      SweepRun& out = result.runs[i];
      out.n_k = n_k_values[i];
      RunConfig cfg = base;
      cfg.n_k = n_k_values[i];
      try {
        out.state = engine::run(cfg, backend);
      } catch (const std::exception& e) {
        out.error = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, n_k_values.size());
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return result;
}

std::string write_sweep_csv(const SensitivityResult& r) {
  std::string out = "n_k,n,c_size\n";
  for (const auto& run : r.runs) {
    if (!run.state) continue;
    for (const auto& rec : run.state->trace) {
      out += std::to_string(run.n_k) + ',' + std::to_string(rec.n) + ',' + std::to_string(rec.c_size) + '\n';
    }
  }
  return out;
}

std::map<std::size_t, std::size_t> parse_sweep_summary(const std::string& csv) {
  const auto rows = engine::parse_csv(csv);
  if (rows.empty() || rows[0] != std::vector<std::string>{"n_k", "n", "c_size"}) {
    throw Error("sweep CSV: bad header");
  }
  std::map<std::size_t, std::pair<std::size_t, std::size_t>> last;  // n_k -> (n, c_size)
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != 3) throw Error("sweep CSV: row " + std::to_string(i) + " has wrong width");
    const std::size_t nk = parse_uint(rows[i][0]);
    const std::size_t n = parse_uint(rows[i][1]);
    const std::size_t c = parse_uint(rows[i][2]);
    auto [it, inserted] = last.emplace(nk, std::make_pair(n, c));
    if (!inserted && n >= it->second.first) it->second = {n, c};
  }
  std::map<std::size_t, std::size_t> out;
  for (const auto& [nk, nc] : last) out[nk] = nc.second;
  return out;
}

}  // namespace algosr::metrics
