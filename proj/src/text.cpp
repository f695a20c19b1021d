#include "svsm/text.hpp"

#include <fstream>
#include <sstream>

#include "svsm/error.hpp"
#include "svsm/porter_stemmer.hpp"

namespace svsm {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

}  // namespace

namespace detail {
// Generated from data/stopwords.txt at configure time.
extern const char* const kEnglishStopwords;
}  // namespace detail

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  for (;;) {
    const auto pos = s.find(sep, begin);
    out.emplace_back(s.substr(begin, pos == std::string_view::npos ? std::string_view::npos : pos - begin));
    if (pos == std::string_view::npos) break;
    begin = pos + 1;
  }
  return out;
}

std::vector<std::string> split_escaped(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == sep) {
      cur.push_back(sep);
      ++i;
    } else if (s[i] == sep) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(s[i]);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_word_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
    Token t;
    t.surface = std::string(text.substr(start, i - start));
    t.normalized = to_lower_ascii(t.surface);
    t.start = start;
    t.end = i;
    tokens.push_back(std::move(t));
  }
  return tokens;
}

std::vector<Token> tokenize_and_filter(std::string_view text, const StopwordList& stopwords) {
  auto tokens = tokenize(text);
  for (auto& t : tokens) t.stopword = stopwords.contains(t.normalized);
  return tokens;
}

std::vector<std::string> normalized_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) out.push_back(std::move(t.normalized));
  return out;
}

std::string normalize_phrase(std::string_view text) {
  std::string out;
  for (const auto& t : tokenize(text)) {
    if (!out.empty()) out.push_back(' ');
    out += t.normalized;
  }
  return out;
}

void collect_content_stems(std::string_view text, const StopwordList& stopwords,
                           std::set<std::string>& out) {
  for (const auto& t : tokenize(text))
    if (!stopwords.contains(t.normalized)) out.insert(porter_stem(t.normalized));
}

std::string fold_plural(std::string_view word) {
  if (word.size() > 3 && word.ends_with("ies")) return std::string(word.substr(0, word.size() - 3)) + "y";
  if (word.size() > 1 && word.ends_with('s') && !word.ends_with("ss"))
    return std::string(word.substr(0, word.size() - 1));
  return std::string(word);
}

StopwordList StopwordList::parse(std::string_view contents) {
  std::set<std::string, std::less<>> words;
  for (const auto& line : split(contents, '\n')) {
    const auto w = trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.insert(to_lower_ascii(w));
  }
  return StopwordList(std::move(words));
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const StopwordList& StopwordList::english() {
  static const StopwordList list = parse(detail::kEnglishStopwords);
  return list;
}

}  // namespace svsm
