#include "algosr/ris.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "algosr/errors.hpp"
#include "algosr/text.hpp"

namespace algosr::ris {
namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_upper_or_digit(char c) { return is_upper(c) || (c >= '0' && c <= '9'); }

struct TagLine {
  std::string tag;
  std::string value;
};

// `XX  - value` with the value separator space optional only when the value
// is empty (e.g. a bare `ER  -`).
std::optional<TagLine> match_tag(std::string_view line) {
  if (line.size() < 5) return std::nullopt;
  if (!is_upper(line[0]) || !is_upper_or_digit(line[1])) return std::nullopt;
  if (line.substr(2, 3) != "  -") return std::nullopt;
  if (line.size() == 5) return TagLine{std::string(line.substr(0, 2)), {}};
  if (line[5] != ' ') return std::nullopt;
  return TagLine{std::string(line.substr(0, 2)), std::string(line.substr(6))};
}

// Something that starts like a tag (two tag characters, spaces, hyphen) but
// does not follow the exact grammar.
bool looks_like_tag(std::string_view line) {
  if (line.size() < 3 || !is_upper(line[0]) || !is_upper_or_digit(line[1])) return false;
  std::size_t i = 2;
  while (i < line.size() && line[i] == ' ') ++i;
  return i > 2 && i < line.size() && line[i] == '-';
}

bool is_blank(std::string_view line) {
  for (char c : line) {
    if (c != ' ' && c != '\t') return false;
  }
  return true;
}

std::optional<int> parse_year(std::string_view v) {
  std::size_t i = 0;
  while (i < v.size() && v[i] == ' ') ++i;
  int year = 0;
  std::size_t digits = 0;
  while (i < v.size() && v[i] >= '0' && v[i] <= '9' && digits < 9) {
    year = year * 10 + (v[i] - '0');
    ++i;
    ++digits;
  }
  if (digits == 0) return std::nullopt;
  return year;
}

struct PendingRecord {
  Reference ref;
  std::string* last_value = nullptr;
  std::string title, abstract, year, ignored;
  bool have_title = false, have_abstract = false, have_year = false;
};

void apply_tag(PendingRecord& rec, const TagLine& t) {
  const std::string& tag = t.tag;
  if (tag == "TY") {
    rec.ref.ref_type = t.value;
    rec.last_value = &rec.ref.ref_type;
  } else if (tag == "TI" || tag == "T1") {
    if (rec.have_title) {
      rec.ignored = t.value;
      rec.last_value = &rec.ignored;
    } else {
      rec.title = t.value;
      rec.have_title = true;
      rec.last_value = &rec.title;
    }
  } else if (tag == "AB" || tag == "N2") {
    if (rec.have_abstract) {
      rec.ignored = t.value;
      rec.last_value = &rec.ignored;
    } else {
      rec.abstract = t.value;
      rec.have_abstract = true;
      rec.last_value = &rec.abstract;
    }
  } else if (tag == "KW") {
    rec.ref.keywords.push_back(t.value);
    rec.last_value = &rec.ref.keywords.back();
  } else if (tag == "PY" || tag == "Y1") {
    if (!rec.have_year) {
      rec.year = t.value;
      rec.have_year = true;
      rec.last_value = &rec.year;
    } else {
      rec.ignored = t.value;
      rec.last_value = &rec.ignored;
    }
  } else if (tag == "ID") {
    rec.ref.raw_id = t.value;
    rec.last_value = &rec.ref.raw_id;
  } else {
    rec.ignored = t.value;
    rec.last_value = &rec.ignored;
  }
}

void append_record(std::string& out, const Reference& raw) {
  const Reference r = canonicalize(raw);
  out += "TY  - ";
  out += r.ref_type;
  out += '\n';
  if (!r.title.empty()) {
    out += "TI  - ";
    out += r.title;
    out += '\n';
  }
  if (!r.abstract.empty()) {
    out += "AB  - ";
    out += r.abstract;
    out += '\n';
  }
  for (const auto& kw : r.keywords) {
    out += "KW  - ";
    out += kw;
    out += '\n';
  }
  if (r.year) {
    out += "PY  - ";
    out += std::to_string(*r.year);
    out += '\n';
  }
  out += "ER  - \n";
}

}  // namespace

ParseResult parse(std::string_view input) {
  if (input.starts_with("\xEF\xBB\xBF")) input.remove_prefix(3);
  ParseResult result;
  std::optional<PendingRecord> rec;
  std::size_t line_no = 0;
  std::size_t last_line = 0;
  std::size_t pos = 0;
  while (pos < input.size()) {
    std::size_t eol = input.find('\n', pos);
    if (eol == std::string_view::npos) eol = input.size();
    std::string_view line = input.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (is_blank(line)) continue;
    last_line = line_no;

    auto tag = match_tag(line);
    if (!tag) {
      if (looks_like_tag(line) || !rec) {
        throw MalformedRecord(line_no, "line does not match the 'XX  - value' tag grammar");
      }
      *rec->last_value += ' ';
      *rec->last_value += text::collapse_whitespace(line);
      continue;
    }
    if (!rec) {
      if (tag->tag != "TY") throw MalformedRecord(line_no, "record must start with TY, got " + tag->tag);
      rec.emplace();
      apply_tag(*rec, *tag);
      continue;
    }
    if (tag->tag == "TY") throw MalformedRecord(line_no, "TY inside an unterminated record");
    if (tag->tag == "ER") {
      Reference r = std::move(rec->ref);
      r.title = std::move(rec->title);
      r.abstract = std::move(rec->abstract);
      r.year = parse_year(rec->year);
      r = canonicalize(std::move(r));
      rec.reset();
      if (is_valid(r)) {
        result.references.push_back(std::move(r));
      } else {
        ++result.skipped;
      }
      continue;
    }
    apply_tag(*rec, *tag);
  }
  if (rec) throw MalformedRecord(last_line, "record is missing its 'ER  - ' terminator");
  return result;
}

std::string write(const Corpus& corpus) {
  std::string out;
  for (const auto& [key, entry] : corpus.entries()) append_record(out, entry.reference);
  return out;
}

std::string write(const std::vector<Reference>& refs) {
  std::string out;
  for (const auto& r : refs) append_record(out, r);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace algosr::ris
