#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svsm/terms.hpp"

namespace svsm {

/// (1 + ln tf) * ln(1 + n_docs / df). Requires tf >= 1 and 1 <= df <= n_docs.
double term_weight(double tf, std::size_t df, std::size_t n_docs);

/// The idf factor ln(1 + n_docs / df) shared by documents and queries.
double idf_factor(std::size_t df, std::size_t n_docs);

struct Posting {
  std::uint32_t doc = 0;  // dense document number
  double weight = 0.0;

  bool operator==(const Posting&) const = default;
};

struct RankedResult {
  std::string doc_id;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based
};

struct IndexStats {
  std::size_t documents = 0;
  std::size_t vocabulary = 0;
  std::size_t keyword_terms = 0;
  std::size_t entity_terms = 0;
  std::size_t sense_terms = 0;
};

// Inverted index over canonical term encodings with tf-idf weights and
// cosine ranking. Documents are numbered in ascending doc_id order, so the
// document number doubles as the tie-break key. Immutable once built.
class Index {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  using Metadata = std::map<std::string, std::string, std::less<>>;

  /// Throws PreconditionError for an empty corpus or duplicate doc ids.
  static Index build(std::vector<std::pair<std::string, TermBag>> documents, Metadata metadata = {});

  /// Cosine top-k. Query weights are scaled by the idf factor; terms
  /// missing from the vocabulary are ignored. Zero scores are dropped and
  /// ties go to the smaller doc_id.
  std::vector<RankedResult> search(const TermBag& query, std::size_t k) const;

  void save(const std::filesystem::path& path) const;
  static Index load(const std::filesystem::path& path);
  void write(std::ostream& out) const;
  static Index read(std::istream& in);

  std::size_t document_count() const { return doc_ids_.size(); }
  std::size_t vocabulary_size() const { return terms_.size(); }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<std::uint32_t> term_id(std::string_view term) const;
  std::uint32_t document_frequency(std::uint32_t term) const { return static_cast<std::uint32_t>(postings_[term].size()); }
  const std::vector<Posting>& postings(std::uint32_t term) const { return postings_[term]; }
  double norm(std::uint32_t doc) const { return norms_[doc]; }
  const Metadata& metadata() const { return metadata_; }
  IndexStats stats() const;

 private:
  Index() = default;
  void rebuild_lookup();

  Metadata metadata_;
  std::vector<std::string> doc_ids_;
  std::vector<std::string> terms_;  // sorted; term id = position
  std::vector<std::vector<Posting>> postings_;
  std::vector<double> norms_;
  std::map<std::string, std::uint32_t, std::less<>> term_lookup_;
};

}  // namespace svsm
