#include "svsm/trec_io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "svsm/error.hpp"
#include "svsm/text.hpp"

namespace svsm {

namespace {

std::vector<std::string> whitespace_fields(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream ss{std::string(line)};
  std::string f;
  while (ss >> f) out.push_back(f);
  return out;
}

template <typename Fn>
void for_each_line(std::string_view contents, Fn&& fn) {
  std::size_t number = 0;
  for (auto line : split(contents, '\n')) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(number, line);
  }
}

double parse_double(std::string_view s, const std::string& name, std::size_t line, const char* what) {
  // std::from_chars for double is unavailable in older libstdc++.
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(name, line, std::string("invalid ") + what + ": " + std::string(s));
}

long long parse_int(std::string_view s, const std::string& name, std::size_t line, const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(name, line, std::string("invalid ") + what + ": " + std::string(s));
  return v;
}

}  // namespace

Qrels parse_qrels(std::string_view contents, const std::string& name) {
  Qrels qrels;
  for_each_line(contents, [&](std::size_t n, const std::string& line) {
    if (trim(line).empty() || trim(line).front() == '#') return;
    const auto f = whitespace_fields(line);
    if (f.size() != 4) throw ParseError(name, n, "expected: query_id 0 doc_id relevance");
    const auto rel = parse_double(f[3], name, n, "relevance");
    auto& set = qrels[f[0]];
    if (rel > 0) set.insert(f[2]);
  });
  return qrels;
}

Run parse_run(std::string_view contents, const std::string& name) {
  std::map<std::string, std::map<long long, std::string>, std::less<>> ranked;
  std::map<std::string, std::set<std::string>, std::less<>> seen;
  for_each_line(contents, [&](std::size_t n, const std::string& line) {
    if (trim(line).empty()) return;
    const auto f = whitespace_fields(line);
    if (f.size() != 6) throw ParseError(name, n, "expected: query_id Q0 doc_id rank score tag");
    const auto rank = parse_int(f[3], name, n, "rank");
    parse_double(f[4], name, n, "score");
    if (rank < 1) throw ParseError(name, n, "rank must be >= 1");
    if (!seen[f[0]].insert(f[2]).second) throw ParseError(name, n, "document " + f[2] + " repeated for query " + f[0]);
    if (!ranked[f[0]].emplace(rank, f[2]).second)
      throw ParseError(name, n, "rank " + f[3] + " repeated for query " + f[0]);
  });
  Run run;
  for (auto& [qid, by_rank] : ranked) {
    auto& list = run[qid];
    for (auto& [_, doc] : by_rank) list.push_back(std::move(doc));
  }
  return run;
}

void write_run(std::ostream& out, const std::vector<RunEntry>& entries, std::string_view tag) {
  for (const auto& e : entries)
    for (const auto& r : e.results)
      out << fmt::format("{} Q0 {} {} {:.6f} {}\n", e.query_id, r.doc_id, r.rank, r.score, tag);
}

std::vector<TextRecord> parse_tab_records(std::string_view contents, const std::string& name) {
  std::vector<TextRecord> out;
  for_each_line(contents, [&](std::size_t n, const std::string& line) {
    if (trim(line).empty()) return;
    const auto tab = line.find('\t');
    TextRecord r;
    r.id = std::string(trim(std::string_view(line).substr(0, tab)));
    if (tab != std::string::npos) r.text = line.substr(tab + 1);
    if (r.id.empty() || r.id.find_first_of(" \t") != std::string::npos)
      throw ParseError(name, n, "expected: id<TAB>text");
    out.push_back(std::move(r));
  });
  return out;
}

void write_curve_csv(std::ostream& out, const AveragedCurves& curves) {
  out << "recall_level,precision,f\n";
  const Curve levels = recall_levels();
  for (int i = 0; i < kRecallLevels; ++i)
    out << fmt::format("{:.1f},{:.6f},{:.6f}\n", levels(i), curves.precision(i), curves.f(i));
}

void write_ap_csv(std::ostream& out, const EvalReport& report) {
  out << "query_id,ap\n";
  for (const auto& q : report.queries) out << fmt::format("{},{:.6f}\n", q.query_id, q.ap);
  out << fmt::format("MAP,{:.6f}\n", report.map);
}

std::vector<std::pair<std::string, double>> parse_ap_csv(std::string_view contents, const std::string& name) {
  std::vector<std::pair<std::string, double>> out;
  bool header = true;
  for_each_line(contents, [&](std::size_t n, const std::string& line) {
    if (trim(line).empty()) return;
    if (header) {
      header = false;
      if (trim(line) != "query_id,ap") throw ParseError(name, n, "expected header query_id,ap");
      return;
    }
    const auto f = split(line, ',');
    if (f.size() != 2) throw ParseError(name, n, "expected: query_id,ap");
    if (f[0] == "MAP") return;
    out.emplace_back(f[0], parse_double(trim(f[1]), name, n, "average precision"));
  });
  return out;
}

std::string format_sigtest(const SigTestResult& r) {
  return fmt::format("{:.6f} {:.6f} {:.6f} {} {} {:.6f} {} {}", r.map_a, r.map_b, r.diff, r.n_minus, r.n_plus,
                     r.p_two_sided, r.seed, r.n_permutations);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace svsm
