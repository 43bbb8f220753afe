#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algosr/catalog.hpp"
#include "algosr/engine.hpp"

namespace algosr::metrics {

/// 1 - mean over keyword pairs of 1 - c[i][j] / min(c[i][i], c[j][j]).
/// A keyword absent from the corpus is fully dissimilar to every other.
/// Throws TooFewKeywords for fewer than two keywords.
double consistency(const Corpus& corpus, const textproc::KeywordSet& keywords);
double consistency(const textproc::CooccurrenceMatrix& c);

enum class ProximityMode {
  pairs,   // share of (a in K_A, b in K_B, a != b) pairs co-occurring somewhere
  counts,  // summed co-occurrence counts over the same pairs, per reference
};

/// Union keyed by dedup key; on a collision the content-wise smaller record
/// is kept so that union(a, b) == union(b, a).
Corpus corpus_union(const Corpus& a, const Corpus& b);

/// Cross-corpus keyword proximity, in [0, 1], symmetric in its arguments.
/// Throws PreconditionViolation if a run is still running, EmptyKeywords
/// if a keyword set is empty.
double proximity(const engine::RunState& a, const engine::RunState& b,
                 ProximityMode mode = ProximityMode::pairs);

struct ProximityMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;
  std::vector<std::int64_t> totals;  // W_i: off-diagonal sum of run i's own keyword co-occurrences
};

/// Needs at least two runs (PreconditionViolation otherwise).
ProximityMatrix proximity_matrix(const std::vector<engine::RunState>& runs,
                                 const std::vector<std::string>& labels,
                                 ProximityMode mode = ProximityMode::pairs,
                                 std::size_t parallelism = 1);

/// Header row and column of labels, four decimals, then a `totals` row.
std::string write_proximity_csv(const ProximityMatrix& m);

struct SweepRun {
  std::size_t n_k = 0;
  std::optional<engine::RunState> state;  // empty when the run failed
  std::string error;
};

struct SensitivityResult {
  std::vector<std::size_t> n_k_values;
  std::vector<SweepRun> runs;  // same order as n_k_values

  /// Final corpus size per n_k, failed runs omitted.
  std::map<std::size_t, std::size_t> summary() const;
};

/// Runs the engine once per n_k from otherwise identical configs. A failing
/// n_k is recorded and does not stop the others.
SensitivityResult sensitivity_sweep(const RunConfig& base, const std::vector<std::size_t>& n_k_values,
                                    catalog::Catalog& backend, std::size_t parallelism = 1);

/// Long format `n_k,n,c_size`.
std::string write_sweep_csv(const SensitivityResult& r);
/// Final c_size per n_k from a write_sweep_csv() document. Throws Error.
std::map<std::size_t, std::size_t> parse_sweep_summary(const std::string& csv);

}  // namespace algosr::metrics
