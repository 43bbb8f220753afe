#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "algosr/catalog.hpp"
#include "algosr/config.hpp"
#include "algosr/reference.hpp"
#include "algosr/textproc.hpp"

namespace algosr::engine {

struct IterationRecord {
  int n = 0;
  std::size_t r_size = 0;  // |R_n| after dedup
  std::size_t added = 0;
  std::size_t c_size = 0;
  std::vector<textproc::Phrase> keywords;  // K_n
  std::vector<std::string> warnings;

  bool operator==(const IterationRecord&) const = default;
};

enum class Status { running, converged, max_iter_reached };

std::string_view to_string(Status s);
/// Throws CorruptState on an unknown name.
Status parse_status(std::string_view s);

struct RunState {
  RunConfig config;
  Corpus corpus;
  textproc::KeywordSet keywords;  // K_0 before the first step
  std::vector<IterationRecord> trace;
  Status status = Status::running;

  int iteration() const noexcept { return static_cast<int>(trace.size()); }
};

/// Fresh state whose current keywords are the seed phrases, verbatim.
RunState initial_state(const RunConfig& config);

/// True when the last `window` trace entries share one c_size.
bool is_stable(const std::vector<IterationRecord>& trace, int window);

/// One iteration: fetch with the current keywords, merge into the corpus,
/// re-extract keywords from the whole corpus, append a record and update
/// status. Throws PreconditionViolation unless status is running;
/// BackendUnavailable leaves `state` untouched.
RunState step(const RunState& state, catalog::Catalog& backend);

using IterationCallback = std::function<void(const RunState&)>;

/// Steps until converged or max_iterations. `state` always holds the last
/// completed iteration, including when a backend error propagates. The
/// callback fires after every completed iteration.
void run_to_completion(RunState& state, catalog::Catalog& backend,
                       const IterationCallback& on_iteration = {});

RunState run(const RunConfig& config, catalog::Catalog& backend,
             const IterationCallback& on_iteration = {});

/// Throws CorruptState describing the first violated run invariant.
void check_invariants(const RunState& state);

}  // namespace algosr::engine
