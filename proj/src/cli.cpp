#include "algosr/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"
#include "algosr/config.hpp"
#include "algosr/engine.hpp"
#include "algosr/errors.hpp"
#include "algosr/metrics.hpp"
#include "algosr/ris.hpp"
#include "algosr/state_io.hpp"
#include "algosr/synthetic_catalog.hpp"

namespace algosr::cli {
namespace fs = std::filesystem;
namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

std::vector<std::size_t> parse_nk_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(s)) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || p != item.data() + item.size() || v == 0) {
      throw ConfigError("--nk expects comma-separated positive integers, got '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

RunConfig load_config_resolved(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw ConfigError("config file not found: " + path.string());
  RunConfig cfg = load_run_config(path);
  if (cfg.backend.kind == BackendKind::ris && cfg.backend.ris_path.is_relative()) {
    cfg.backend.ris_path = fs::absolute(path.parent_path() / cfg.backend.ris_path).lexically_normal();
  }
  return cfg;
}

std::string progress_line(const engine::IterationRecord& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "n=%d r_size=%zu added=%zu c_size=%zu n_keywords=%zu warnings=%zu", r.n,
                r.r_size, r.added, r.c_size, r.keywords.size(), r.warnings.size());
  return buf;
}

int cmd_run(const std::string& config_path, const fs::path& state_dir, bool resume, std::ostream& err) {
  engine::RunState state;
  const bool have_state = fs::exists(state_dir / "status");
  if (have_state && !resume) {
    err << "error: " << state_dir.string() << " already holds a run; pass --resume to continue it\n";
    return kUsage;
  }
  if (have_state) {
    state = engine::load(state_dir);
    if (!config_path.empty() && load_config_resolved(config_path) != state.config) {
      err << "warning: --config differs from the persisted config; using the persisted one\n";
    }
    if (state.status != engine::Status::running) {
      err << "run already finished (" << engine::to_string(state.status) << ") after " << state.iteration()
          << " iterations, c_size=" << state.corpus.size() << "\n";
      return kOk;
    }
    err << "resuming at iteration " << state.iteration() + 1 << "\n";
  } else {
    if (config_path.empty()) {
      err << "error: --config is required to start a run\n";
      return kUsage;
    }
    state = engine::initial_state(load_config_resolved(config_path));
    engine::persist(state, state_dir);
  }

  auto backend = make_catalog(state.config.backend, {}, [&err](const std::string& m) { err << m << "\n"; });
  try {
    engine::run_to_completion(state, *backend, [&](const engine::RunState& s) {
      engine::persist(s, state_dir);
      err << progress_line(s.trace.back()) << "\n";
      for (const auto& w : s.trace.back().warnings) err << "  warning: " << w << "\n";
    });
  } catch (const BackendUnavailable& e) {
    err << "backend failure after iteration " << state.iteration() << ": " << e.what()
        << "\nstate saved; rerun with --resume\n";
    return kBackendFailure;
  }
  err << "status=" << engine::to_string(state.status) << " iterations=" << state.iteration()
      << " c_size=" << state.corpus.size() << "\n";
  return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& nk, const fs::path& out_path,
              std::size_t parallelism, std::ostream& err) {
  const auto values = parse_nk_list(nk);
  const RunConfig cfg = load_config_resolved(config_path);
  auto backend = make_catalog(cfg.backend);
  const auto result = metrics::sensitivity_sweep(cfg, values, *backend, parallelism);
  ris::write_file(out_path, metrics::write_sweep_csv(result));
  bool any_failed = false;
  for (const auto& r : result.runs) {
    if (r.state) {
      err << "n_k=" << r.n_k << " status=" << engine::to_string(r.state->status)
          << " iterations=" << r.state->iteration() << " c_size=" << r.state->corpus.size() << "\n";
    } else {
      any_failed = true;
      err << "n_k=" << r.n_k << " failed: " << r.error << "\n";
    }
  }
  return any_failed ? kBackendFailure : kOk;
}

int cmd_compare(const std::string& states, const fs::path& out_path, bool counts, std::ostream& err) {
  const auto dirs = split_list(states);
  if (dirs.size() < 2) {
    err << "error: compare needs at least two state directories\n";
    return kUsage;
  }
  std::vector<engine::RunState> runs;
  std::vector<std::string> labels;
  for (const auto& d : dirs) {
    runs.push_back(engine::load(d));
    if (runs.back().status == engine::Status::running) {
      err << "error: run in " << d << " has not finished\n";
      return kUsage;
    }
    labels.push_back(fs::path(d).lexically_normal().filename().string());
    if (labels.back().empty()) labels.back() = fs::path(d).lexically_normal().parent_path().filename().string();
  }
  const auto m = metrics::proximity_matrix(runs, labels,
                                           counts ? metrics::ProximityMode::counts : metrics::ProximityMode::pairs);
  ris::write_file(out_path, metrics::write_proximity_csv(m));
  return kOk;
}

int cmd_consistency(const fs::path& dir, std::ostream& out) {
  const auto state = engine::load(dir);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", metrics::consistency(state.corpus, state.keywords));
  out << buf << "\n";
  return kOk;
}

int cmd_synth_gen(const fs::path& spec_path, const fs::path& out_dir, std::ostream& err) {
  if (!fs::is_regular_file(spec_path)) throw ConfigError("spec file not found: " + spec_path.string());
  const auto spec = parse_synthetic_spec(ris::read_file(spec_path));
  const auto cat = catalog::generate_synthetic(spec);
  fs::create_directories(out_dir);
  ris::write_file(out_dir / "catalog.ris", ris::write(cat.documents()));
  ris::write_file(out_dir / "index.tsv", catalog::write_index(cat));
  err << "wrote " << cat.documents().size() << " references to " << (out_dir / "catalog.ris").string() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterative keyword-driven corpus expansion and lexical corpus metrics", "algosr"};
  app.require_subcommand(1);

  std::string config_path, state_dir, nk, out_path, states, spec_path;
  bool resume = false, counts = false;
  std::size_t parallelism = 1;

  auto* run_cmd = app.add_subcommand("run", "Expand a corpus from seed keywords until its size is stable");
  run_cmd->add_option("--config", config_path, "Run configuration (JSON)");
  run_cmd->add_option("--state-dir", state_dir, "Directory holding the persisted run")->required();
  run_cmd->add_flag("--resume", resume, "Continue the run persisted in --state-dir");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run once per keyword count and write n_k,n,c_size CSV");
  sweep_cmd->add_option("--config", config_path, "Base run configuration (JSON)")->required();
  sweep_cmd->add_option("--nk", nk, "Comma-separated keyword counts, e.g. 2,5,10,20,30")->required();
  sweep_cmd->add_option("--out", out_path, "Output CSV")->required();
  sweep_cmd->add_option("--parallel", parallelism, "Concurrent runs")->check(CLI::PositiveNumber);

  auto* compare_cmd = app.add_subcommand("compare", "Lexical proximity matrix between finished runs");
  compare_cmd->add_option("--states", states, "Comma-separated state directories")->required();
  compare_cmd->add_option("--out", out_path, "Output CSV")->required();
  compare_cmd->add_flag("--counts", counts, "Use summed co-occurrence counts instead of pair presence");

  auto* consistency_cmd = app.add_subcommand("consistency", "Print the lexical consistency of a run");
  consistency_cmd->add_option("--state", state_dir, "State directory")->required();

  auto* synth_cmd = app.add_subcommand("synth-gen", "Write a synthetic catalog as RIS plus token index");
  synth_cmd->add_option("--spec", spec_path, "Synthetic catalog spec (JSON)")->required();
  synth_cmd->add_option("--out", out_path, "Output directory")->required();

  std::vector<const char*> argv{"algosr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(config_path, state_dir, resume, err);
    if (*sweep_cmd) return cmd_sweep(config_path, nk, out_path, parallelism, err);
    if (*compare_cmd) return cmd_compare(states, out_path, counts, err);
    if (*consistency_cmd) return cmd_consistency(state_dir, out);
    if (*synth_cmd) return cmd_synth_gen(spec_path, out_path, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CorruptState& e) {
    err << "corrupt state: " << e.what() << "\n";
    return kCorruptState;
  } catch (const AuthMissing& e) {
    err << "backend failure: " << e.what() << "\n";
    return kBackendFailure;
  } catch (const BackendUnavailable& e) {
    err << "backend failure: " << e.what() << "\n";
    return kBackendFailure;
  } catch (const TooFewKeywords& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace algosr::cli
