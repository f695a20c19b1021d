#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace svsm {

enum class TripleKind { kEntity, kSense };

// Generalized (name / hyper / id) term. An empty optional is the wildcard.
// For entities hyper is a class id; for senses it is a hypernym sense id.
struct Triple {
  TripleKind kind = TripleKind::kEntity;
  std::optional<std::string> name;
  std::optional<std::string> hyper;
  std::optional<std::string> id;

  /// "ne:NAME|HYPER|ID" / "wn:NAME|HYPER|ID"; fields lowercased, "*" for a
  /// wildcard. Literal "\", "|" are backslash-escaped and a literal "*"
  /// field is written "\*", so distinct triples never share an encoding.
  std::string encode() const;

  auto operator<=>(const Triple&) const = default;
};

inline Triple entity_triple(std::optional<std::string> name, std::optional<std::string> cls,
                            std::optional<std::string> id) {
  return {TripleKind::kEntity, std::move(name), std::move(cls), std::move(id)};
}

inline Triple sense_triple(std::optional<std::string> name, std::optional<std::string> hyper,
                           std::optional<std::string> id) {
  return {TripleKind::kSense, std::move(name), std::move(hyper), std::move(id)};
}

struct Keyword {
  std::string stem;
  auto operator<=>(const Keyword&) const = default;
};

using GeneralizedTerm = std::variant<Keyword, Triple>;

/// "kw:STEM" for keywords, Triple::encode() otherwise.
std::string encode(const GeneralizedTerm& term);

inline constexpr std::string_view kKeywordPrefix = "kw:";
inline constexpr std::string_view kEntityTriplePrefix = "ne:";
inline constexpr std::string_view kSenseTriplePrefix = "wn:";

// Weighted multiset of generalized terms keyed by canonical encoding.
// Documents carry occurrence counts; queries may carry real weights.
class TermBag {
 public:
  void add(const GeneralizedTerm& term, double weight = 1.0) { add_encoded(encode(term), weight); }
  void add_encoded(const std::string& key, double weight);
  /// Keeps the larger of the existing and the new weight.
  void merge_max(const std::string& key, double weight);

  double weight(std::string_view key) const;
  bool contains(std::string_view key) const { return weights_.find(key) != weights_.end(); }
  bool empty() const { return weights_.empty(); }
  std::size_t size() const { return weights_.size(); }

  const std::map<std::string, double, std::less<>>& weights() const { return weights_; }
  auto begin() const { return weights_.begin(); }
  auto end() const { return weights_.end(); }

  bool operator==(const TermBag&) const = default;

 private:
  std::map<std::string, double, std::less<>> weights_;
};

}  // namespace svsm
