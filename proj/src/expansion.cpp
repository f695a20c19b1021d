#include "svsm/expansion.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "svsm/error.hpp"

namespace svsm {

ModelFeatures features_of(SearchModel model) {
  switch (model) {
    case SearchModel::kKeyword: return {false, false, false, false};
    case SearchModel::kWordNet: return {false, true, false, false};
    case SearchModel::kKwNeWh: return {true, false, true, false};
    case SearchModel::kSemantic: return {true, true, true, true};
  }
  return {};
}

std::string_view to_string(SearchModel model) {
  switch (model) {
    case SearchModel::kKeyword: return "keyword";
    case SearchModel::kWordNet: return "wordnet";
    case SearchModel::kKwNeWh: return "kw-ne-wh";
    case SearchModel::kSemantic: return "semantic";
  }
  return "unknown";
}

std::optional<SearchModel> parse_search_model(std::string_view name) {
  for (auto m : {SearchModel::kKeyword, SearchModel::kWordNet, SearchModel::kKwNeWh, SearchModel::kSemantic})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

namespace {

using Slot = std::optional<std::string>;

// Instantiates the nine pattern families. `others` are the alternative
// names (aliases or synonyms), `supers` the more general hypers.
std::set<Triple> nine_patterns(TripleKind kind, const Slot& name, const std::vector<std::string>& others,
                               const Slot& hyper, const std::vector<std::string>& supers, const Slot& id) {
  std::set<Triple> out;
  auto add = [&](Slot n, Slot h, Slot i) { out.insert(Triple{kind, std::move(n), std::move(h), std::move(i)}); };
  if (name) add(name, std::nullopt, std::nullopt);
  if (hyper) add(std::nullopt, hyper, std::nullopt);
  if (name && hyper) add(name, hyper, std::nullopt);
  for (const auto& a : others) add(a, std::nullopt, std::nullopt);
  for (const auto& s : supers) add(std::nullopt, s, std::nullopt);
  if (name)
    for (const auto& s : supers) add(name, s, std::nullopt);
  if (hyper)
    for (const auto& a : others) add(a, hyper, std::nullopt);
  for (const auto& a : others)
    for (const auto& s : supers) add(a, s, std::nullopt);
  if (id) add(std::nullopt, std::nullopt, id);
  return out;
}

}  // namespace

std::set<Triple> expand_entity_triples(const NEAnnotation& ann, const KnowledgeBase& kb) {
  Slot name;
  if (ann.name_known) name = ann.matched_name;
  Slot cls = ann.class_id;
  std::vector<std::string> others;
  if (ann.entity_id) {
    const auto* e = kb.entity(*ann.entity_id);
    if (e == nullptr) throw ReferenceError("unknown entity " + *ann.entity_id);
    for (auto& n : kb.normalized_names(*e))
      if (!name || n != *name) others.push_back(std::move(n));
    if (!cls) cls = e->class_id;
  }
  std::vector<std::string> supers;
  if (cls) supers = kb.superclass_closure(*cls);  // throws for an unknown class
  if (!name && !cls && !ann.entity_id) throw PreconditionError("entity annotation without any known feature");
  return nine_patterns(TripleKind::kEntity, name, others, cls, supers, ann.entity_id);
}

std::set<Triple> expand_sense_triples(const WNAnnotation& ann, const KnowledgeBase& kb) {
  const auto* s = kb.sense(ann.sense_id);
  if (s == nullptr) throw ReferenceError("unknown sense " + ann.sense_id);
  Slot name = ann.lemma;
  std::vector<std::string> synonyms;
  for (const auto& l : s->lemmas) {
    auto n = normalize_phrase(l);
    if (n != ann.lemma && std::find(synonyms.begin(), synonyms.end(), n) == synonyms.end())
      synonyms.push_back(std::move(n));
  }
  std::vector<std::string> supers;
  if (ann.hypernym_id) {
    for (auto& h : kb.hypernym_closure(ann.sense_id))
      if (h != *ann.hypernym_id) supers.push_back(std::move(h));
  }
  return nine_patterns(TripleKind::kSense, name, synonyms, ann.hypernym_id, supers, ann.sense_id);
}

Triple most_specific_triple(const NEAnnotation& ann) {
  if (ann.entity_id) return entity_triple(std::nullopt, std::nullopt, ann.entity_id);
  if (ann.name_known && ann.class_id) return entity_triple(ann.matched_name, ann.class_id, std::nullopt);
  if (ann.class_id) return entity_triple(std::nullopt, ann.class_id, std::nullopt);
  if (ann.name_known) return entity_triple(ann.matched_name, std::nullopt, std::nullopt);
  throw PreconditionError("entity annotation without any known feature");
}

Triple most_specific_triple(const WNAnnotation& ann) {
  if (!ann.sense_id.empty()) return sense_triple(std::nullopt, std::nullopt, ann.sense_id);
  if (!ann.lemma.empty() && ann.hypernym_id) return sense_triple(ann.lemma, ann.hypernym_id, std::nullopt);
  if (ann.hypernym_id) return sense_triple(std::nullopt, ann.hypernym_id, std::nullopt);
  if (!ann.lemma.empty()) return sense_triple(ann.lemma, std::nullopt, std::nullopt);
  throw PreconditionError("sense annotation without any known feature");
}

Triple concept_triple(std::string_view concept_ref) {
  if (concept_ref.starts_with(kSensePrefix))
    return sense_triple(std::nullopt, std::nullopt, std::string(concept_ref));
  return entity_triple(std::nullopt, std::nullopt, std::string(concept_ref));
}

InterrogativeMapping map_interrogative(std::string_view token, const KnowledgeBase& kb) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 3> kTable{{
      {"who", "Person"},
      {"where", "Location"},
      {"when", "TimePeriod"},
  }};
  const auto word = to_lower_ascii(token);
  for (const auto& [w, cls] : kTable) {
    if (w != word) continue;
    if (!kb.has_class(cls))
      return {std::nullopt, "interrogative '" + word + "' maps to class " + std::string(cls) +
                                " which is missing from the taxonomy"};
    return {entity_triple(std::nullopt, std::string(cls), std::nullopt), std::nullopt};
  }
  return {};
}

namespace {

void scan_segment(std::span<const std::string> tokens, std::size_t offset, const KnowledgeBase& kb,
                  std::vector<PhraseMatch>& out) {
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    if (auto m = kb.longest_phrase_at(tokens, pos)) {
      m->begin += offset;
      pos += m->length;
      out.push_back(std::move(*m));
    } else {
      ++pos;
    }
  }
}

RelationRecognition finish(std::vector<PhraseMatch> phrases) {
  RelationRecognition r;
  r.phrases = std::move(phrases);
  if (r.phrases.size() == 1) r.match = r.phrases.front();
  r.multi_relation = r.phrases.size() > 1;
  return r;
}

}  // namespace

RelationRecognition recognize_relation(std::span<const std::string> tokens, const KnowledgeBase& kb) {
  std::vector<PhraseMatch> phrases;
  scan_segment(tokens, 0, kb, phrases);
  return finish(std::move(phrases));
}

RelationRecognition recognize_relation(std::span<const Token> tokens, std::span<const NEAnnotation> entities,
                                       const KnowledgeBase& kb) {
  std::vector<bool> masked(tokens.size(), false);
  for (const auto& a : entities)
    for (auto i = a.first; i <= a.last && i < tokens.size(); ++i) masked[i] = true;

  std::vector<PhraseMatch> phrases;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (masked[i]) {
      ++i;
      continue;
    }
    const auto begin = i;
    std::vector<std::string> segment;
    while (i < tokens.size() && !masked[i]) segment.push_back(tokens[i++].normalized);
    scan_segment(segment, begin, kb, phrases);
  }
  return finish(std::move(phrases));
}

SAExpansion sa_expand(std::span<const WeightedConcept> query_concepts, std::string_view relation_id,
                      const KnowledgeBase& kb) {
  SAExpansion out;
  out.relation_id = std::string(relation_id);
  std::map<std::string, double> added;
  for (const auto& q : query_concepts) {
    for (const auto& f : kb.facts_matching(relation_id, q.ref)) {
      const auto& other = f.subject == q.ref ? f.object : f.subject;
      out.activations.push_back({q.ref, other, q.weight, f});
      auto [it, inserted] = added.emplace(other, q.weight);
      if (!inserted) it->second = std::max(it->second, q.weight);
    }
  }
  for (const auto& [ref, w] : added) out.added.push_back({ref, w});
  return out;
}

TermBag document_terms(const AnnotatedText& annotated, const KnowledgeBase& kb) {
  TermBag bag;
  for (const auto& stem : annotated.keyword_stems) bag.add(Keyword{stem});
  for (const auto& ann : annotated.ne_annotations)
    for (const auto& t : expand_entity_triples(ann, kb)) bag.add(t);
  for (const auto& ann : annotated.wn_annotations)
    for (const auto& t : expand_sense_triples(ann, kb)) bag.add(t);
  return bag;
}

TermBag analyze_document(std::string_view text, const KnowledgeBase& kb, const StopwordList& stopwords,
                         SearchModel model, std::size_t window) {
  const auto f = features_of(model);
  return document_terms(annotate(text, kb, stopwords, {window, f.entities, f.senses}), kb);
}

QueryAnalysis query_terms(std::string_view query_text, const KnowledgeBase& kb, const StopwordList& stopwords,
                          const QueryOptions& options) {
  const auto f = features_of(options.model);
  QueryAnalysis q;
  q.annotated = annotate(query_text, kb, stopwords, {kWholeText, f.entities, f.senses});
  const auto& tokens = q.annotated.tokens;

  std::map<std::string, double> concept_counts;  // encoded triple -> count
  auto count = [&](const Triple& t) { concept_counts[t.encode()] += 1.0; };

  if (f.interrogatives && !tokens.empty()) {
    auto m = map_interrogative(tokens.front().normalized, kb);
    if (m.warning) q.warnings.push_back(*m.warning);
    if (m.triple) {
      q.interrogative_word = tokens.front().normalized;
      q.interrogative_class = m.triple;
      count(*m.triple);
    }
  }

  // Ambiguous spans narrowed by a class label become a single name+class
  // term; other spans contribute each candidate's most specific triple.
  std::map<std::string, double> sa_weights;
  const auto& ne = q.annotated.ne_annotations;
  for (std::size_t i = 0; i < ne.size();) {
    std::size_t j = i;
    while (j < ne.size() && ne[j].first == ne[i].first && ne[j].last == ne[i].last) ++j;
    if (j - i > 1 && ne[i].qualifier_class) {
      NEAnnotation collapsed = ne[i];
      collapsed.entity_id.reset();
      collapsed.class_id = ne[i].qualifier_class;
      count(most_specific_triple(collapsed));
    } else {
      for (auto k = i; k < j; ++k) count(most_specific_triple(ne[k]));
    }
    for (auto k = i; k < j; ++k)
      if (ne[k].entity_id) sa_weights[*ne[k].entity_id] += 1.0;
    i = j;
  }
  for (const auto& ann : q.annotated.wn_annotations) {
    count(most_specific_triple(ann));
    sa_weights[ann.sense_id] += 1.0;
  }
  for (const auto& [key, w] : concept_counts) {
    q.concept_terms.emplace_back(key, w);
    q.bag.add_encoded(key, w);
  }
  for (const auto& stem : q.annotated.keyword_stems) q.bag.add(Keyword{stem});

  if (f.spreading_activation) {
    q.relation = recognize_relation(tokens, ne, kb);
    if (q.relation.match && options.spreading_activation) {
      std::vector<WeightedConcept> concepts;
      for (const auto& [ref, w] : sa_weights) concepts.push_back({ref, w});
      auto sa = sa_expand(concepts, q.relation.match->relation, kb);
      for (auto k = q.relation.match->begin; k < q.relation.match->begin + q.relation.match->length; ++k)
        sa.relation_phrase.push_back(tokens[k].normalized);
      for (const auto& a : sa.added) q.bag.merge_max(concept_triple(a.ref).encode(), a.weight);
      q.expansion = std::move(sa);
    } else if (q.relation.multi_relation) {
      q.warnings.push_back("query has more than one relation phrase; spreading activation skipped");
    }
  }
  return q;
}

}  // namespace svsm
