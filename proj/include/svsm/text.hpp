#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace svsm {

struct Token {
  std::string surface;
  std::string normalized;  // ASCII-lowercased surface
  std::size_t start = 0;   // byte offsets into the source text, [start, end)
  std::size_t end = 0;
  bool stopword = false;
};

class StopwordList {
 public:
  StopwordList() = default;
  explicit StopwordList(std::set<std::string, std::less<>> words) : words_(std::move(words)) {}

  /// The shipped English list (data/stopwords.txt, compiled in).
  static const StopwordList& english();
  /// One lowercase word per line; blank lines and '#' comments ignored.
  static StopwordList from_file(const std::filesystem::path& path);
  static StopwordList parse(std::string_view contents);

  bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
  std::size_t size() const { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
};

std::string to_lower_ascii(std::string_view s);

/// Maximal runs of ASCII alphanumerics (bytes >= 0x80 count as word
/// characters so UTF-8 letters stay inside tokens). No stopword flags.
std::vector<Token> tokenize(std::string_view text);

/// Tokenizes and flags each token whose normalized form is in `stopwords`.
std::vector<Token> tokenize_and_filter(std::string_view text, const StopwordList& stopwords);

/// Normalized token forms of `text` joined by single spaces. This is the
/// key under which names, lemmas and phrases are compared.
std::string normalize_phrase(std::string_view text);

std::vector<std::string> normalized_tokens(std::string_view text);

/// Distinct Porter stems of the non-stopword tokens of `text`, appended to `out`.
void collect_content_stems(std::string_view text, const StopwordList& stopwords,
                           std::set<std::string>& out);

/// Light plural folding used for class-label matching: "cities" -> "city",
/// "clubs" -> "club"; words ending in "ss" are left alone.
std::string fold_plural(std::string_view word);

/// Splits on `sep`, honouring "\<sep>" as an escaped literal separator.
std::vector<std::string> split_escaped(std::string_view s, char sep);

std::vector<std::string> split(std::string_view s, char sep);

std::string_view trim(std::string_view s);

}  // namespace svsm
