#include "algosr/state_io.hpp"

#include <charconv>
#include <map>
#include <system_error>

#include "algosr/errors.hpp"
#include "algosr/ris.hpp"
#include "algosr/text.hpp"

namespace algosr::engine {
namespace fs = std::filesystem;
namespace {

constexpr const char* kRequired[] = {"config.json", "status", "corpus.ris", "keywords.kw",
                                     "trace.csv", "trace_keywords.tsv", "provenance.csv"};

std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::size_t parse_size(const std::string& s, const char* what) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) {
    throw CorruptState(std::string("bad ") + what + " value '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    out.push_back(text.substr(pos, eol - pos));
    pos = eol + 1;
  }
  return out;
}

std::string join_warnings(const std::vector<std::string>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += " | ";
    // One warning per separator; embedded newlines would break the row.
    out += text::collapse_whitespace(w[i]);
  }
  return out;
}

std::vector<std::string> split_warnings(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    std::size_t sep = s.find(" | ", pos);
    if (sep == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, sep - pos));
    pos = sep + 3;
  }
  return out;
}

}  // namespace

std::string write_trace_csv(const std::vector<IterationRecord>& trace) {
  std::string out = "n,r_size,added,c_size,n_keywords,warnings\n";
  for (const auto& r : trace) {
    out += std::to_string(r.n) + ',' + std::to_string(r.r_size) + ',' + std::to_string(r.added) + ',' +
           std::to_string(r.c_size) + ',' + std::to_string(r.keywords.size()) + ',' +
           csv_field(join_warnings(r.warnings)) + '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      row.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error("unterminated quoted CSV field");
  if (any || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::pair<std::string, std::string>> serialize(const RunState& s) {
  std::vector<std::pair<std::string, std::string>> files;
  files.emplace_back("config.json", write_run_config(s.config));
  files.emplace_back("corpus.ris", ris::write(s.corpus));
  files.emplace_back("keywords.kw", textproc::write_keywords(s.keywords));
  files.emplace_back("trace.csv", write_trace_csv(s.trace));
  std::string hist;
  for (const auto& r : s.trace) {
    for (const auto& k : r.keywords) hist += std::to_string(r.n) + '\t' + k + '\n';
  }
  files.emplace_back("trace_keywords.tsv", std::move(hist));
  std::string prov = "dedup_key,iteration\n";
  for (const auto& [key, e] : s.corpus.entries()) {
    prov += csv_field(key.str()) + ',' + std::to_string(e.iteration) + '\n';
  }
  files.emplace_back("provenance.csv", std::move(prov));
  files.emplace_back("status", std::string(to_string(s.status)) + "\n");
  return files;
}

void persist(const RunState& state, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [name, bytes] : serialize(state)) {
    const fs::path tmp = dir / (name + ".tmp");
    ris::write_file(tmp, bytes);
    fs::rename(tmp, dir / name, ec);
    if (ec) throw IoError("cannot replace " + (dir / name).string() + ": " + ec.message());
  }
}

RunState load(const fs::path& dir) {
  for (const char* name : kRequired) {
    if (!fs::is_regular_file(dir / name)) throw CorruptState("missing " + (dir / name).string());
  }
  RunState s;
  try {
    s.config = parse_run_config(ris::read_file(dir / "config.json"));
  } catch (const ConfigError& e) {
    throw CorruptState(std::string("config.json: ") + e.what());
  }
  s.status = parse_status(text::collapse_whitespace(ris::read_file(dir / "status")));

  ris::ParseResult parsed;
  try {
    parsed = ris::parse(ris::read_file(dir / "corpus.ris"));
  } catch (const MalformedRecord& e) {
    throw CorruptState(std::string("corpus.ris: ") + e.what());
  }
  if (parsed.skipped != 0) throw CorruptState("corpus.ris holds records without title or abstract");

  std::map<std::string, int> provenance;
  const auto prov_rows = parse_csv(ris::read_file(dir / "provenance.csv"));
  if (prov_rows.empty() || prov_rows[0] != std::vector<std::string>{"dedup_key", "iteration"}) {
    throw CorruptState("provenance.csv: bad header");
  }
  for (std::size_t i = 1; i < prov_rows.size(); ++i) {
    if (prov_rows[i].size() != 2) throw CorruptState("provenance.csv: bad row");
    const auto it = static_cast<int>(parse_size(prov_rows[i][1], "iteration"));
    if (!provenance.emplace(prov_rows[i][0], it).second) throw CorruptState("provenance.csv: duplicate key");
  }
  for (auto& r : parsed.references) {
    const DedupKey key = dedup_key(r);
    auto p = provenance.find(key.str());
    if (p == provenance.end()) throw CorruptState("no provenance for '" + key.str() + "'");
    if (!s.corpus.insert(std::move(r), p->second)) throw CorruptState("duplicate reference '" + key.str() + "'");
  }
  if (s.corpus.size() != provenance.size()) throw CorruptState("provenance lists references not in corpus.ris");

  try {
    s.keywords = textproc::parse_keywords(ris::read_file(dir / "keywords.kw"), s.config.n_k);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw CorruptState(std::string("keywords.kw: ") + e.what());
  }

  std::vector<std::vector<std::string>> rows;
  try {
    rows = parse_csv(ris::read_file(dir / "trace.csv"));
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw CorruptState(std::string("trace.csv: ") + e.what());
  }
  const std::vector<std::string> header{"n", "r_size", "added", "c_size", "n_keywords", "warnings"};
  if (rows.empty() || rows[0] != header) throw CorruptState("trace.csv: bad header");
  std::vector<std::size_t> n_keywords;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != header.size()) throw CorruptState("trace.csv: row " + std::to_string(i) + " has wrong width");
    IterationRecord rec;
    rec.n = static_cast<int>(parse_size(row[0], "n"));
    rec.r_size = parse_size(row[1], "r_size");
    rec.added = parse_size(row[2], "added");
    rec.c_size = parse_size(row[3], "c_size");
    n_keywords.push_back(parse_size(row[4], "n_keywords"));
    rec.warnings = split_warnings(row[5]);
    s.trace.push_back(std::move(rec));
  }

  for (const auto& line : split_lines(ris::read_file(dir / "trace_keywords.tsv"))) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw CorruptState("trace_keywords.tsv: bad line");
    const std::size_t n = parse_size(line.substr(0, tab), "iteration");
    if (n < 1 || n > s.trace.size()) throw CorruptState("trace_keywords.tsv: iteration out of range");
    s.trace[n - 1].keywords.push_back(line.substr(tab + 1));
  }
  for (std::size_t i = 0; i < s.trace.size(); ++i) {
    if (s.trace[i].keywords.size() != n_keywords[i]) {
      throw CorruptState("trace_keywords.tsv disagrees with trace.csv at iteration " + std::to_string(i + 1));
    }
  }
  check_invariants(s);
  return s;
}

}  // namespace algosr::engine
