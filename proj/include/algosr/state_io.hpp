#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "algosr/engine.hpp"

namespace algosr::engine {

/// Writes a run directory:
///   config.json          run configuration
///   status               running | converged | max_iter_reached
///   corpus.ris           canonical RIS
///   keywords.kw          current keyword set
///   trace.csv            n,r_size,added,c_size,n_keywords,warnings
///   trace_keywords.tsv   n<TAB>phrase, the keywords produced by each iteration
///   provenance.csv       dedup_key,iteration
/// Files are replaced by rename, status last. Throws IoError.
void persist(const RunState& state, const std::filesystem::path& dir);

/// Inverse of persist(). Throws CorruptState for missing or inconsistent
/// files, IoError when the directory cannot be read.
RunState load(const std::filesystem::path& dir);

/// Bytes persist() would write, keyed by file name.
std::vector<std::pair<std::string, std::string>> serialize(const RunState& state);

std::string write_trace_csv(const std::vector<IterationRecord>& trace);

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, LF or CRLF.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace algosr::engine
