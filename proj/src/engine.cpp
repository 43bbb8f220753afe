#include "algosr/engine.hpp"

#include "algosr/errors.hpp"

namespace algosr::engine {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::running: return "running";
    case Status::converged: return "converged";
    case Status::max_iter_reached: return "max_iter_reached";
  }
  return "running";
}

Status parse_status(std::string_view s) {
  if (s == "running") return Status::running;
  if (s == "converged") return Status::converged;
  if (s == "max_iter_reached") return Status::max_iter_reached;
  throw CorruptState("unknown status '" + std::string(s) + "'");
}

RunState initial_state(const RunConfig& config) {
  config.validate();
  RunState s;
  s.config = config;
  s.keywords.n_k = config.n_k;
  for (const auto& k : config.initial_keywords) s.keywords.terms.push_back({k, 0.0});
  return s;
}

bool is_stable(const std::vector<IterationRecord>& trace, int window) {
  if (window < 1 || trace.size() < static_cast<std::size_t>(window)) return false;
  const std::size_t size = trace.back().c_size;
  for (std::size_t i = trace.size() - window; i < trace.size(); ++i) {
    if (trace[i].c_size != size) return false;
  }
  return true;
}

RunState step(const RunState& state, catalog::Catalog& backend) {
  if (state.status != Status::running) {
    throw PreconditionViolation("step() on a run whose status is " + std::string(to_string(state.status)));
  }
  auto fetched = catalog::fetch_for_keywords(backend, state.keywords.phrases(), state.config.per_kw_limit,
                                             state.config.fetch_parallelism);

  RunState next = state;
  const int n = state.iteration() + 1;
  IterationRecord rec;
  rec.n = n;
  rec.r_size = fetched.references.size();
  rec.added = merge_into(next.corpus, fetched.references, n);
  rec.c_size = next.corpus.size();
  rec.warnings = std::move(fetched.warnings);

  // An empty corpus has nothing to extract from; keep the previous keywords.
  if (!next.corpus.empty()) next.keywords = textproc::extract_keywords(next.corpus, state.config.n_k);
  if (next.keywords.empty()) next.keywords = state.keywords;
  rec.keywords = next.keywords.phrases();
  next.trace.push_back(std::move(rec));

  if (is_stable(next.trace, state.config.stability_window)) {
    next.status = Status::converged;
  } else if (n >= state.config.max_iterations) {
    next.status = Status::max_iter_reached;
  }
  return next;
}

void run_to_completion(RunState& state, catalog::Catalog& backend, const IterationCallback& on_iteration) {
  while (state.status == Status::running) {
    state = step(state, backend);
    if (on_iteration) on_iteration(state);
  }
}

RunState run(const RunConfig& config, catalog::Catalog& backend, const IterationCallback& on_iteration) {
  RunState s = initial_state(config);
  run_to_completion(s, backend, on_iteration);
  return s;
}

void check_invariants(const RunState& s) {
  const auto& t = s.trace;
  if (t.size() > static_cast<std::size_t>(s.config.max_iterations)) {
    throw CorruptState("trace is longer than max_iterations");
  }
  std::size_t prev = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i].n != static_cast<int>(i) + 1) throw CorruptState("trace iteration numbers are not 1..n");
    if (t[i].c_size < prev) throw CorruptState("corpus size decreases at iteration " + std::to_string(t[i].n));
    if (t[i].added != t[i].c_size - prev) {
      throw CorruptState("added count disagrees with corpus growth at iteration " + std::to_string(t[i].n));
    }
    if (t[i].added > t[i].r_size) throw CorruptState("more references added than fetched");
    prev = t[i].c_size;
  }
  if (prev != s.corpus.size()) throw CorruptState("corpus size does not match the last trace entry");
  std::vector<std::size_t> per_iteration(t.size() + 1, 0);
  for (const auto& [key, e] : s.corpus.entries()) {
    if (dedup_key(e.reference) != key) throw CorruptState("entry key is not its dedup key: " + key.str());
    if (e.iteration < 1 || e.iteration > static_cast<int>(t.size())) {
      throw CorruptState("provenance out of range for " + key.str());
    }
    ++per_iteration[e.iteration];
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (per_iteration[i + 1] != t[i].added) throw CorruptState("provenance disagrees with trace added counts");
  }
  if (!t.empty() && t.back().keywords != s.keywords.phrases()) {
    throw CorruptState("current keywords differ from the last trace entry");
  }
  if (s.keywords.empty()) throw CorruptState("keyword set is empty");
  const bool stable = is_stable(t, s.config.stability_window);
  switch (s.status) {
    case Status::converged:
      if (!stable) throw CorruptState("status converged but the size window is not stable");
      break;
    case Status::max_iter_reached:
      if (t.size() != static_cast<std::size_t>(s.config.max_iterations)) {
        throw CorruptState("status max_iter_reached before max_iterations");
      }
      break;
    case Status::running:
      if (stable || t.size() >= static_cast<std::size_t>(s.config.max_iterations)) {
        throw CorruptState("status running on a finished trace");
      }
      break;
  }
}

}  // namespace algosr::engine
