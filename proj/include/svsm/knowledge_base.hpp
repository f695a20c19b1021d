#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace svsm {

/// Concept references are namespaced: "e:<entity id>" or "s:<sense id>".
inline constexpr std::string_view kEntityPrefix = "e:";
inline constexpr std::string_view kSensePrefix = "s:";

struct EntityRecord {
  std::string id;  // prefixed, "e:..."
  std::string canonical_name;
  std::vector<std::string> aliases;
  std::string class_id;
};

struct ClassRecord {
  std::string id;
  std::vector<std::string> direct_supers;  // sorted
  std::vector<std::string> labels;         // normalized surface labels
};

struct SenseRecord {
  std::string id;                   // prefixed, "s:..."
  std::vector<std::string> lemmas;  // first lemma is the headword
  std::string gloss;
  std::vector<std::string> direct_hypernyms;  // file order
  std::vector<std::string> direct_hyponyms;   // derived, sorted
};

struct RelationFact {
  std::string subject;
  std::string relation;
  std::string object;

  auto operator<=>(const RelationFact&) const = default;
};

struct RelationPhrase {
  std::vector<std::string> tokens;
  std::string relation;
};

struct PhraseMatch {
  std::size_t begin = 0;
  std::size_t length = 0;
  std::string relation;
};

/// File locations of the five knowledge-base tables.
struct KnowledgeBasePaths {
  std::filesystem::path entities;
  std::filesystem::path taxonomy;
  std::filesystem::path lexicon;
  std::filesystem::path facts;
  std::filesystem::path phrases;

  /// entities.tsv, taxonomy.tsv, lexicon.tsv, facts.tsv, phrases.tsv in `dir`.
  static KnowledgeBasePaths in_directory(const std::filesystem::path& dir);
};

/// In-memory table contents; `name` is used in diagnostics.
struct KnowledgeBaseSource {
  std::string name;
  std::string contents;
};

struct KnowledgeBaseSources {
  KnowledgeBaseSource entities;
  KnowledgeBaseSource taxonomy;
  KnowledgeBaseSource lexicon;
  KnowledgeBaseSource facts;
  KnowledgeBaseSource phrases;
};

// Immutable combined knowledge base: entity catalog, class taxonomy, sense
// lexicon, relation facts and the relation-phrase dictionary. All lookups
// are const and the object is safe to share between threads once built.
class KnowledgeBase {
 public:
  static KnowledgeBase load(const KnowledgeBasePaths& paths);
  static KnowledgeBase parse(const KnowledgeBaseSources& sources);

  const std::vector<EntityRecord>& entities() const { return entities_; }
  const std::vector<ClassRecord>& classes() const { return classes_; }
  const std::vector<SenseRecord>& senses() const { return senses_; }
  const std::vector<RelationFact>& facts() const { return facts_; }
  const std::vector<RelationPhrase>& phrases() const { return phrases_; }

  /// Non-fatal findings at load time (e.g. a phrase relation with no facts).
  const std::vector<std::string>& warnings() const { return warnings_; }

  const EntityRecord* entity(std::string_view id) const;
  const ClassRecord* class_record(std::string_view id) const;
  const SenseRecord* sense(std::string_view id) const;
  bool has_class(std::string_view id) const { return class_record(id) != nullptr; }

  /// Entities whose canonical name or an alias equals `name`, compared
  /// case-insensitively over normalized tokens. Sorted by entity id.
  std::vector<const EntityRecord*> entities_by_name(std::string_view name) const;

  /// All names of an entity (canonical first, then aliases), normalized.
  std::vector<std::string> normalized_names(const EntityRecord& e) const;

  /// Transitive superclasses, excluding `class_id`; breadth-first with each
  /// level sorted by id. Throws ReferenceError for an undeclared class.
  std::vector<std::string> superclass_closure(std::string_view class_id) const;

  /// Senses listing `lemma` (case-insensitive) in lexicon file order.
  std::vector<const SenseRecord*> sense_candidates(std::string_view lemma) const;

  /// Transitive hypernyms, ordered as superclass_closure.
  std::vector<std::string> hypernym_closure(std::string_view sense_id) const;

  /// Facts with `relation` where `concept` is subject or object, file order.
  std::vector<RelationFact> facts_matching(std::string_view relation, std::string_view concept_ref) const;

  /// Leftmost-longest dictionary phrase within `tokens`.
  std::optional<std::string> relation_for_phrase(std::span<const std::string> tokens) const;

  /// Longest dictionary phrase starting exactly at `pos`.
  std::optional<PhraseMatch> longest_phrase_at(std::span<const std::string> tokens, std::size_t pos) const;

  // Gazetteer access for the annotators. Keys are normalized names or
  // space-joined plural-folded class labels.
  const std::map<std::string, std::vector<std::size_t>, std::less<>>& name_index() const { return name_index_; }
  const std::map<std::string, std::vector<std::string>, std::less<>>& class_label_index() const {
    return class_label_index_;
  }
  std::size_t max_name_tokens() const { return max_name_tokens_; }
  std::size_t max_label_tokens() const { return max_label_tokens_; }

 private:
  KnowledgeBase() = default;

  std::vector<std::string> closure(std::string_view start,
                                   const std::map<std::string, std::vector<std::string>, std::less<>>& edges) const;

  std::vector<EntityRecord> entities_;
  std::vector<ClassRecord> classes_;
  std::vector<SenseRecord> senses_;
  std::vector<RelationFact> facts_;
  std::vector<RelationPhrase> phrases_;
  std::vector<std::string> warnings_;

  std::map<std::string, std::size_t, std::less<>> entity_by_id_;
  std::map<std::string, std::size_t, std::less<>> class_by_id_;
  std::map<std::string, std::size_t, std::less<>> sense_by_id_;
  std::map<std::string, std::vector<std::string>, std::less<>> class_edges_;
  std::map<std::string, std::vector<std::string>, std::less<>> hypernym_edges_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> name_index_;
  std::map<std::string, std::vector<std::string>, std::less<>> class_label_index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> lemma_index_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> facts_by_relation_;
  std::map<std::vector<std::string>, std::string> phrase_index_;
  std::size_t max_name_tokens_ = 0;
  std::size_t max_label_tokens_ = 0;
  std::size_t max_phrase_tokens_ = 0;
};

/// Space-separated words of a CamelCase identifier, lowercased:
/// "FootballClub" -> "football club".
std::string camel_case_label(std::string_view id);

}  // namespace svsm
