#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svsm/annotation.hpp"
#include "svsm/knowledge_base.hpp"
#include "svsm/terms.hpp"

namespace svsm {

/// The four compared retrieval models.
enum class SearchModel { kKeyword, kWordNet, kKwNeWh, kSemantic };

struct ModelFeatures {
  bool entities = false;
  bool senses = false;
  bool interrogatives = false;
  bool spreading_activation = false;
};

ModelFeatures features_of(SearchModel model);
std::string_view to_string(SearchModel model);
std::optional<SearchModel> parse_search_model(std::string_view name);

// Document-side expansion of one entity mention: every instantiation of
// (n/*/*) (*/c/*) (n/c/*) (a/*/*) (*/s/*) (n/s/*) (a/c/*) (a/s/*) (*/*/id)
// over the other names a of the entity and its superclasses s. Patterns
// needing a feature the annotation lacks are skipped.
std::set<Triple> expand_entity_triples(const NEAnnotation& ann, const KnowledgeBase& kb);

// Same patterns for a disambiguated word: synonyms stand in for aliases,
// the chosen hypernym for the class, and the rest of the sense's hypernym
// closure for superclasses.
std::set<Triple> expand_sense_triples(const WNAnnotation& ann, const KnowledgeBase& kb);

/// Query-side term: (*/*/id) > (n/c/*) > (*/c/*) > (n/*/*), first available.
Triple most_specific_triple(const NEAnnotation& ann);
Triple most_specific_triple(const WNAnnotation& ann);

/// (*/*/ref) for a concept reference "e:..." or "s:...".
Triple concept_triple(std::string_view concept_ref);

struct InterrogativeMapping {
  std::optional<Triple> triple;
  std::optional<std::string> warning;
};

/// who -> Person, where -> Location, when -> TimePeriod. Other words,
/// including what/which/how, map to nothing.
InterrogativeMapping map_interrogative(std::string_view token, const KnowledgeBase& kb);

struct RelationRecognition {
  std::optional<PhraseMatch> match;  // set only for single-relation queries
  std::vector<PhraseMatch> phrases;  // every disjoint phrase found
  bool multi_relation = false;
};

/// Leftmost-longest relation phrases over the lowercase tokens.
RelationRecognition recognize_relation(std::span<const std::string> tokens, const KnowledgeBase& kb);

/// As above, but phrases never overlap a named-entity span.
RelationRecognition recognize_relation(std::span<const Token> tokens, std::span<const NEAnnotation> entities,
                                       const KnowledgeBase& kb);

struct WeightedConcept {
  std::string ref;
  double weight = 0.0;

  bool operator==(const WeightedConcept&) const = default;
};

struct Activation {
  std::string source;
  std::string added;
  double weight = 0.0;
  RelationFact fact;
};

struct SAExpansion {
  std::vector<std::string> relation_phrase;
  std::string relation_id;
  std::vector<Activation> activations;  // one per (source, fact)
  std::vector<WeightedConcept> added;   // distinct, max weight, sorted by ref
};

/// One step of query-oriented spreading activation: for each query concept
/// and each fact of `relation_id` touching it, the fact's other argument is
/// activated with the source concept's weight.
SAExpansion sa_expand(std::span<const WeightedConcept> query_concepts, std::string_view relation_id,
                      const KnowledgeBase& kb);

/// Keyword stems with their counts plus the full expansion of every entity
/// and word-sense annotation, one count per mention.
TermBag document_terms(const AnnotatedText& annotated, const KnowledgeBase& kb);

struct QueryOptions {
  SearchModel model = SearchModel::kSemantic;
  bool spreading_activation = true;  // only honoured when the model has it
};

struct QueryAnalysis {
  AnnotatedText annotated;
  std::optional<std::string> interrogative_word;
  std::optional<Triple> interrogative_class;
  std::vector<std::pair<std::string, double>> concept_terms;  // encoded triple -> weight
  RelationRecognition relation;
  std::optional<SAExpansion> expansion;
  std::vector<std::string> warnings;
  TermBag bag;
};

QueryAnalysis query_terms(std::string_view query_text, const KnowledgeBase& kb, const StopwordList& stopwords,
                          const QueryOptions& options = {});

/// Document pipeline for a model: annotate with the model's features, then
/// document_terms.
TermBag analyze_document(std::string_view text, const KnowledgeBase& kb, const StopwordList& stopwords,
                         SearchModel model, std::size_t window = kDocumentWindow);

}  // namespace svsm
