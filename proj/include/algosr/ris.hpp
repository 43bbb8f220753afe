#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "algosr/reference.hpp"

namespace algosr::ris {

struct ParseResult {
  std::vector<Reference> references;  // file order, canonicalized
  std::size_t skipped = 0;            // records with neither title nor abstract
};

/// Reads RIS text. Tags consumed: TY, TI/T1, AB/N2, KW, PY/Y1, ID; all others
/// are dropped. Continuation lines are folded into the preceding tag's value
/// with a single space. Throws MalformedRecord on a bad tag line, a record
/// without `ER`, or a tag outside a record.
ParseResult parse(std::string_view text);

/// Canonical form: records in dedup-key order, tags TY TI AB KW PY ER, one
/// KW line per keyword, LF line endings, ASCII only.
std::string write(const Corpus& corpus);

/// Same record layout as write(const Corpus&) but keeps the given order.
std::string write(const std::vector<Reference>& refs);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace algosr::ris
