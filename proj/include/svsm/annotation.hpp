#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svsm/knowledge_base.hpp"
#include "svsm/text.hpp"

namespace svsm {

/// A named-entity mention. Ambiguous spans carry one annotation per
/// candidate entity, all with the same [first, last].
struct NEAnnotation {
  std::size_t first = 0;  // token indexes, inclusive
  std::size_t last = 0;
  std::string matched_name;  // normalized; empty when !name_known
  bool name_known = false;
  std::optional<std::string> entity_id;
  std::optional<std::string> class_id;
  // Set when a class label directly after the name narrowed the candidates
  // ("Paris City"); the label tokens are part of the span.
  std::optional<std::string> qualifier_class;
};

struct WNAnnotation {
  std::size_t token_index = 0;
  std::string lemma;  // normalized surface that selected the sense
  std::string sense_id;
  std::optional<std::string> hypernym_id;
  std::size_t overlap_score = 0;
};

struct AnnotatedText {
  std::vector<Token> tokens;
  std::vector<NEAnnotation> ne_annotations;
  std::vector<WNAnnotation> wn_annotations;
  std::vector<std::string> keyword_stems;  // in token order, repeats kept
};

inline constexpr std::size_t kDocumentWindow = 10;
inline constexpr std::size_t kWholeText = std::numeric_limits<std::size_t>::max();

struct AnnotateOptions {
  std::size_t window = kDocumentWindow;
  bool entities = true;
  bool senses = true;
};

/// Gazetteer recognition: leftmost-longest match over entity names, aliases
/// and class labels. A match must contain at least one non-stopword token.
std::vector<NEAnnotation> recognize_entities(std::span<const Token> tokens, const KnowledgeBase& kb);

/// Stems of the sense's gloss and lemmas plus the lemmas and glosses of its
/// direct hypernyms and hyponyms, stopwords removed.
std::set<std::string> sense_signature(const SenseRecord& sense, const KnowledgeBase& kb,
                                      const StopwordList& stopwords);

/// Lesk-style overlap disambiguation for every non-stopword token outside
/// NE spans that has a sense candidate (looked up as written, then with the
/// plural folded). `window` counts non-stopword tokens
/// on each side; the target token itself is not part of its context.
std::vector<WNAnnotation> disambiguate_senses(std::span<const Token> tokens,
                                              std::span<const NEAnnotation> ne_annotations,
                                              const KnowledgeBase& kb, std::size_t window,
                                              const StopwordList& stopwords);

AnnotatedText annotate(std::string_view text, const KnowledgeBase& kb, const StopwordList& stopwords,
                       const AnnotateOptions& options = {});

}  // namespace svsm
