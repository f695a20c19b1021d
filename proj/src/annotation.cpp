#include "svsm/annotation.hpp"

#include <algorithm>
#include <map>

#include "svsm/porter_stemmer.hpp"

namespace svsm {

namespace {

struct LabelMatch {
  std::size_t length = 0;
  const std::vector<std::string>* classes = nullptr;
};

bool has_content_token(std::span<const Token> tokens, std::size_t begin, std::size_t length) {
  for (std::size_t i = begin; i < begin + length; ++i)
    if (!tokens[i].stopword) return true;
  return false;
}

std::size_t longest_name_at(std::span<const Token> tokens, std::size_t pos, const KnowledgeBase& kb,
                            const std::vector<std::size_t>** hits) {
  const auto max_len = std::min(kb.max_name_tokens(), tokens.size() - pos);
  for (auto len = max_len; len >= 1; --len) {
    std::string key;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (i > pos) key.push_back(' ');
      key += tokens[i].normalized;
    }
    auto it = kb.name_index().find(key);
    if (it != kb.name_index().end() && has_content_token(tokens, pos, len)) {
      *hits = &it->second;
      return len;
    }
  }
  return 0;
}

LabelMatch longest_label_at(std::span<const Token> tokens, std::size_t pos, const KnowledgeBase& kb) {
  if (pos >= tokens.size()) return {};
  const auto max_len = std::min(kb.max_label_tokens(), tokens.size() - pos);
  for (auto len = max_len; len >= 1; --len) {
    std::string key;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (i > pos) key.push_back(' ');
      key += fold_plural(tokens[i].normalized);
    }
    auto it = kb.class_label_index().find(key);
    if (it != kb.class_label_index().end() && has_content_token(tokens, pos, len)) return {len, &it->second};
  }
  return {};
}

bool class_is_or_under(const KnowledgeBase& kb, const std::string& cls, const std::string& target) {
  if (cls == target) return true;
  const auto supers = kb.superclass_closure(cls);
  return std::find(supers.begin(), supers.end(), target) != supers.end();
}

}  // namespace

std::vector<NEAnnotation> recognize_entities(std::span<const Token> tokens, const KnowledgeBase& kb) {
  std::vector<NEAnnotation> out;
  std::size_t pos = 0;
  while (pos < tokens.size()) {
    const std::vector<std::size_t>* hits = nullptr;
    const auto name_len = longest_name_at(tokens, pos, kb, &hits);
    const auto label = longest_label_at(tokens, pos, kb);
    if (name_len == 0 && label.length == 0) {
      ++pos;
      continue;
    }

    if (name_len >= label.length) {
      std::vector<const EntityRecord*> candidates;
      for (auto i : *hits) candidates.push_back(&kb.entities()[i]);
      std::string matched;
      for (std::size_t i = pos; i < pos + name_len; ++i) {
        if (i > pos) matched.push_back(' ');
        matched += tokens[i].normalized;
      }

      std::size_t end = pos + name_len;
      std::optional<std::string> qualifier;
      if (const auto q = longest_label_at(tokens, end, kb); q.length > 0) {
        for (const auto& cls : *q.classes) {
          std::vector<const EntityRecord*> kept;
          for (const auto* e : candidates)
            if (class_is_or_under(kb, e->class_id, cls)) kept.push_back(e);
          if (!kept.empty()) {
            candidates = std::move(kept);
            qualifier = cls;
            end += q.length;
            break;
          }
        }
      }

      for (const auto* e : candidates) {
        NEAnnotation a;
        a.first = pos;
        a.last = end - 1;
        a.matched_name = matched;
        a.name_known = true;
        a.entity_id = e->id;
        a.class_id = e->class_id;
        a.qualifier_class = qualifier;
        out.push_back(std::move(a));
      }
      pos = end;
    } else {
      for (const auto& cls : *label.classes) {
        NEAnnotation a;
        a.first = pos;
        a.last = pos + label.length - 1;
        a.class_id = cls;
        out.push_back(std::move(a));
      }
      pos += label.length;
    }
  }
  return out;
}

std::set<std::string> sense_signature(const SenseRecord& sense, const KnowledgeBase& kb,
                                      const StopwordList& stopwords) {
  std::set<std::string> sig;
  auto add_sense = [&](const SenseRecord& s) {
    collect_content_stems(s.gloss, stopwords, sig);
    for (const auto& lemma : s.lemmas) collect_content_stems(lemma, stopwords, sig);
  };
  add_sense(sense);
  for (const auto& id : sense.direct_hypernyms)
    if (const auto* h = kb.sense(id)) add_sense(*h);
  for (const auto& id : sense.direct_hyponyms)
    if (const auto* h = kb.sense(id)) add_sense(*h);
  return sig;
}

std::vector<WNAnnotation> disambiguate_senses(std::span<const Token> tokens,
                                              std::span<const NEAnnotation> ne_annotations,
                                              const KnowledgeBase& kb, std::size_t window,
                                              const StopwordList& stopwords) {
  std::vector<bool> in_entity(tokens.size(), false);
  for (const auto& a : ne_annotations)
    for (auto i = a.first; i <= a.last && i < tokens.size(); ++i) in_entity[i] = true;

  std::vector<std::size_t> content;  // token indexes of non-stopwords
  std::vector<std::string> content_stems;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].stopword) continue;
    content.push_back(i);
    content_stems.push_back(porter_stem(tokens[i].normalized));
  }

  std::map<std::string, std::set<std::string>, std::less<>> signatures;
  std::vector<WNAnnotation> out;
  for (std::size_t c = 0; c < content.size(); ++c) {
    const auto ti = content[c];
    if (in_entity[ti]) continue;
    std::string lemma = tokens[ti].normalized;
    auto candidates = kb.sense_candidates(lemma);
    if (candidates.empty()) {
      lemma = fold_plural(lemma);
      if (lemma != tokens[ti].normalized) candidates = kb.sense_candidates(lemma);
    }
    if (candidates.empty()) continue;

    const std::size_t lo = window >= c ? 0 : c - window;
    const std::size_t hi = window >= content.size() - 1 - c ? content.size() - 1 : c + window;
    std::set<std::string> context;
    for (auto k = lo; k <= hi; ++k)
      if (k != c) context.insert(content_stems[k]);

    const SenseRecord* best = nullptr;
    std::size_t best_score = 0;
    for (const auto* s : candidates) {
      auto it = signatures.find(s->id);
      if (it == signatures.end()) it = signatures.emplace(s->id, sense_signature(*s, kb, stopwords)).first;
      std::size_t score = 0;
      for (const auto& stem : context) score += it->second.count(stem);
      if (best == nullptr || score > best_score) {
        best = s;
        best_score = score;
      }
    }

    WNAnnotation a;
    a.token_index = ti;
    a.lemma = std::move(lemma);
    a.sense_id = best->id;
    if (!best->direct_hypernyms.empty()) a.hypernym_id = best->direct_hypernyms.front();
    a.overlap_score = best_score;
    out.push_back(std::move(a));
  }
  return out;
}

AnnotatedText annotate(std::string_view text, const KnowledgeBase& kb, const StopwordList& stopwords,
                       const AnnotateOptions& options) {
  AnnotatedText out;
  out.tokens = tokenize_and_filter(text, stopwords);
  if (options.entities) out.ne_annotations = recognize_entities(out.tokens, kb);
  if (options.senses)
    out.wn_annotations = disambiguate_senses(out.tokens, out.ne_annotations, kb, options.window, stopwords);

  std::vector<bool> claimed(out.tokens.size(), false);
  for (const auto& a : out.ne_annotations)
    for (auto i = a.first; i <= a.last; ++i) claimed[i] = true;
  for (const auto& a : out.wn_annotations) claimed[a.token_index] = true;
  for (std::size_t i = 0; i < out.tokens.size(); ++i)
    if (!claimed[i] && !out.tokens[i].stopword) out.keyword_stems.push_back(porter_stem(out.tokens[i].normalized));
  return out;
}

}  // namespace svsm
