#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svsm/eval.hpp"
#include "svsm/vsm_index.hpp"

namespace svsm {

// Line-oriented exchange formats. Parsers take the full file contents plus
// a display name and throw ParseError with the 1-based line on bad input.

/// "query_id 0 doc_id relevance"; relevance > 0 means relevant. Queries
/// whose judgments are all non-relevant are kept with an empty set.
Qrels parse_qrels(std::string_view contents, const std::string& name);

/// "query_id Q0 doc_id rank score tag"; ordered by the rank column.
Run parse_run(std::string_view contents, const std::string& name);

struct RunEntry {
  std::string query_id;
  std::vector<RankedResult> results;
};

void write_run(std::ostream& out, const std::vector<RunEntry>& entries, std::string_view tag);

struct TextRecord {
  std::string id;
  std::string text;
};

/// "id<TAB>text" per line (corpus and query files). Blank lines are
/// skipped; a line with an id and no text yields an empty record.
std::vector<TextRecord> parse_tab_records(std::string_view contents, const std::string& name);

/// "recall_level,precision,f" header and 11 rows.
void write_curve_csv(std::ostream& out, const AveragedCurves& curves);

/// "query_id,ap" header, one row per query, then "MAP,<value>".
void write_ap_csv(std::ostream& out, const EvalReport& report);

/// Reads an AP CSV back, ignoring the header and the MAP row.
std::vector<std::pair<std::string, double>> parse_ap_csv(std::string_view contents, const std::string& name);

/// "map_a map_b diff n_minus n_plus p seed n_permutations".
std::string format_sigtest(const SigTestResult& r);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace svsm
