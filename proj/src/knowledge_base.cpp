#include "svsm/knowledge_base.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "svsm/error.hpp"
#include "svsm/text.hpp"

namespace svsm {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

// Non-comment, non-blank lines split on tabs.
std::vector<Line> table_lines(const KnowledgeBaseSource& src) {
  std::vector<Line> out;
  std::size_t number = 0;
  for (auto raw : split(src.contents, '\n')) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty() || raw.front() == '#') continue;
    auto fields = split(raw, '\t');
    for (auto& f : fields) f = std::string(trim(f));
    out.push_back({number, std::move(fields)});
  }
  return out;
}

std::string unescape_bar(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && s[i + 1] == '|') continue;
    out.push_back(s[i]);
  }
  return out;
}

std::vector<std::string> list_field(std::string_view field) {
  std::vector<std::string> out;
  for (auto& item : split_escaped(field, '|')) {
    auto t = std::string(trim(item));
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::string with_prefix(std::string_view id, std::string_view prefix) {
  if (id.starts_with(prefix)) return std::string(id);
  return std::string(prefix) + std::string(id);
}

[[noreturn]] void fail(const KnowledgeBaseSource& src, std::size_t line, const std::string& what) {
  throw ParseError(src.name, line, what);
}

[[noreturn]] void dangling(const KnowledgeBaseSource& src, std::size_t line, const std::string& what) {
  throw ReferenceError(src.name + ":" + std::to_string(line) + ": " + what);
}

using EdgeMap = std::map<std::string, std::vector<std::string>, std::less<>>;

// Depth-first search over sorted nodes; reports the first cycle found as
// "a -> b -> ... -> a".
void check_acyclic(const EdgeMap& edges, const std::string& what) {
  enum class Mark { kNone, kActive, kDone };
  std::map<std::string, Mark, std::less<>> mark;
  std::vector<std::string> stack;

  auto visit = [&](auto&& self, const std::string& node) -> void {
    mark[node] = Mark::kActive;
    stack.push_back(node);
    if (auto it = edges.find(node); it != edges.end()) {
      for (const auto& next : it->second) {
        const auto m = mark[next];
        if (m == Mark::kActive) {
          auto begin = std::find(stack.begin(), stack.end(), next);
          std::string path;
          for (auto p = begin; p != stack.end(); ++p) path += *p + " -> ";
          path += next;
          throw CycleError(what + " cycle: " + path);
        }
        if (m == Mark::kNone) self(self, next);
      }
    }
    stack.pop_back();
    mark[node] = Mark::kDone;
  };

  for (const auto& [node, _] : edges)
    if (mark[node] == Mark::kNone) visit(visit, node);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string label_key(std::string_view text) {
  std::string key;
  for (const auto& tok : normalized_tokens(text)) {
    if (!key.empty()) key.push_back(' ');
    key += fold_plural(tok);
  }
  return key;
}

}  // namespace

std::string camel_case_label(std::string_view id) {
  std::string spaced;
  for (std::size_t i = 0; i < id.size(); ++i) {
    const char c = id[i];
    const bool upper = c >= 'A' && c <= 'Z';
    if (upper && i > 0) {
      const char prev = id[i - 1];
      const bool prev_lower = (prev >= 'a' && prev <= 'z') || (prev >= '0' && prev <= '9');
      const bool prev_upper = prev >= 'A' && prev <= 'Z';
      const bool next_lower = i + 1 < id.size() && id[i + 1] >= 'a' && id[i + 1] <= 'z';
      if (prev_lower || (prev_upper && next_lower)) spaced.push_back(' ');
    }
    spaced.push_back(c == '_' || c == '-' ? ' ' : c);
  }
  return normalize_phrase(spaced);
}

KnowledgeBasePaths KnowledgeBasePaths::in_directory(const std::filesystem::path& dir) {
  return {dir / "entities.tsv", dir / "taxonomy.tsv", dir / "lexicon.tsv", dir / "facts.tsv",
          dir / "phrases.tsv"};
}

KnowledgeBase KnowledgeBase::load(const KnowledgeBasePaths& paths) {
  KnowledgeBaseSources sources{
      {paths.entities.string(), read_file(paths.entities)},
      {paths.taxonomy.string(), read_file(paths.taxonomy)},
      {paths.lexicon.string(), read_file(paths.lexicon)},
      {paths.facts.string(), read_file(paths.facts)},
      {paths.phrases.string(), read_file(paths.phrases)},
  };
  return parse(sources);
}

KnowledgeBase KnowledgeBase::parse(const KnowledgeBaseSources& sources) {
  KnowledgeBase kb;

  // Taxonomy first: entities refer to classes.
  {
    const auto& src = sources.taxonomy;
    std::set<std::string> lowered;
    std::vector<std::size_t> line_of;
    for (const auto& line : table_lines(src)) {
      if (line.fields.size() > 3) fail(src, line.number, "expected class_id, supers[, labels]");
      ClassRecord c;
      c.id = line.fields[0];
      if (c.id.empty()) fail(src, line.number, "empty class id");
      if (!lowered.insert(to_lower_ascii(c.id)).second) fail(src, line.number, "duplicate class id " + c.id);
      if (line.fields.size() > 1) c.direct_supers = list_field(line.fields[1]);
      std::sort(c.direct_supers.begin(), c.direct_supers.end());
      c.direct_supers.erase(std::unique(c.direct_supers.begin(), c.direct_supers.end()), c.direct_supers.end());
      if (auto derived = camel_case_label(c.id); !derived.empty()) c.labels.push_back(derived);
      if (line.fields.size() > 2)
        for (const auto& l : list_field(line.fields[2]))
          if (auto n = normalize_phrase(l); !n.empty() && std::find(c.labels.begin(), c.labels.end(), n) == c.labels.end())
            c.labels.push_back(n);
      kb.class_by_id_.emplace(c.id, kb.classes_.size());
      kb.classes_.push_back(std::move(c));
      line_of.push_back(line.number);
    }
    for (std::size_t i = 0; i < kb.classes_.size(); ++i) {
      const auto& c = kb.classes_[i];
      for (const auto& s : c.direct_supers)
        if (!kb.class_by_id_.contains(s))
          dangling(src, line_of[i], "class " + c.id + " names undeclared superclass " + s);
      kb.class_edges_[c.id] = c.direct_supers;
    }
    check_acyclic(kb.class_edges_, "taxonomy");
    for (const auto& c : kb.classes_) {
      for (const auto& label : c.labels) {
        const auto key = label_key(label);
        auto& ids = kb.class_label_index_[key];
        if (std::find(ids.begin(), ids.end(), c.id) == ids.end()) ids.push_back(c.id);
        kb.max_label_tokens_ = std::max(kb.max_label_tokens_, split(key, ' ').size());
      }
    }
  }

  {
    const auto& src = sources.entities;
    std::set<std::string> lowered;
    for (const auto& line : table_lines(src)) {
      if (line.fields.size() < 3 || line.fields.size() > 4)
        fail(src, line.number, "expected entity_id, class_id, canonical_name[, aliases]");
      EntityRecord e;
      if (line.fields[0].empty()) fail(src, line.number, "empty entity id");
      e.id = with_prefix(line.fields[0], kEntityPrefix);
      e.class_id = line.fields[1];
      e.canonical_name = unescape_bar(line.fields[2]);
      if (!lowered.insert(to_lower_ascii(e.id)).second) fail(src, line.number, "duplicate entity id " + e.id);
      if (normalize_phrase(e.canonical_name).empty()) fail(src, line.number, "empty canonical name");
      if (!kb.class_by_id_.contains(e.class_id))
        dangling(src, line.number, "entity " + e.id + " has undeclared class " + e.class_id);
      std::set<std::string> seen{normalize_phrase(e.canonical_name)};
      if (line.fields.size() == 4) {
        for (auto& alias : list_field(line.fields[3])) {
          const auto norm = normalize_phrase(alias);
          if (norm.empty()) fail(src, line.number, "alias has no word characters");
          if (norm == normalize_phrase(e.canonical_name))
            fail(src, line.number, "alias repeats the canonical name: " + alias);
          if (!seen.insert(norm).second) fail(src, line.number, "duplicate alias " + alias);
          e.aliases.push_back(std::move(alias));
        }
      }
      kb.entity_by_id_.emplace(e.id, kb.entities_.size());
      kb.entities_.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < kb.entities_.size(); ++i) {
      for (const auto& name : kb.normalized_names(kb.entities_[i])) {
        kb.name_index_[name].push_back(i);
        kb.max_name_tokens_ = std::max(kb.max_name_tokens_, split(name, ' ').size());
      }
    }
    for (auto& [name, ids] : kb.name_index_) {
      std::sort(ids.begin(), ids.end(),
                [&](std::size_t a, std::size_t b) { return kb.entities_[a].id < kb.entities_[b].id; });
    }
  }

  {
    const auto& src = sources.lexicon;
    std::set<std::string> lowered;
    std::vector<std::size_t> line_of;
    for (const auto& line : table_lines(src)) {
      if (line.fields.size() < 3 || line.fields.size() > 4)
        fail(src, line.number, "expected sense_id, lemmas, hypernyms[, gloss]");
      SenseRecord s;
      if (line.fields[0].empty()) fail(src, line.number, "empty sense id");
      s.id = with_prefix(line.fields[0], kSensePrefix);
      if (!lowered.insert(to_lower_ascii(s.id)).second) fail(src, line.number, "duplicate sense id " + s.id);
      for (const auto& lemma : list_field(line.fields[1])) {
        if (normalize_phrase(lemma).empty()) fail(src, line.number, "lemma has no word characters");
        s.lemmas.push_back(lemma);
      }
      if (s.lemmas.empty()) fail(src, line.number, "sense without lemmas");
      for (const auto& h : list_field(line.fields[2])) {
        auto id = with_prefix(h, kSensePrefix);
        if (std::find(s.direct_hypernyms.begin(), s.direct_hypernyms.end(), id) == s.direct_hypernyms.end())
          s.direct_hypernyms.push_back(std::move(id));
      }
      if (line.fields.size() == 4) s.gloss = line.fields[3];
      kb.sense_by_id_.emplace(s.id, kb.senses_.size());
      kb.senses_.push_back(std::move(s));
      line_of.push_back(line.number);
    }
    for (std::size_t i = 0; i < kb.senses_.size(); ++i) {
      const auto& s = kb.senses_[i];
      for (const auto& h : s.direct_hypernyms) {
        auto it = kb.sense_by_id_.find(h);
        if (it == kb.sense_by_id_.end())
          dangling(src, line_of[i], "sense " + s.id + " names undeclared hypernym " + h);
        kb.senses_[it->second].direct_hyponyms.push_back(s.id);
      }
      kb.hypernym_edges_[s.id] = s.direct_hypernyms;
    }
    check_acyclic(kb.hypernym_edges_, "hypernym");
    for (std::size_t i = 0; i < kb.senses_.size(); ++i) {
      auto& hypos = kb.senses_[i].direct_hyponyms;
      std::sort(hypos.begin(), hypos.end());
      std::set<std::string> seen;
      for (const auto& lemma : kb.senses_[i].lemmas)
        if (seen.insert(normalize_phrase(lemma)).second) kb.lemma_index_[normalize_phrase(lemma)].push_back(i);
    }
  }

  {
    const auto& src = sources.facts;
    auto resolve = [&](const std::string& ref, std::size_t line) -> std::string {
      if (ref.starts_with(kEntityPrefix)) {
        if (!kb.entity_by_id_.contains(ref)) dangling(src, line, "unknown entity " + ref);
        return ref;
      }
      if (ref.starts_with(kSensePrefix)) {
        if (!kb.sense_by_id_.contains(ref)) dangling(src, line, "unknown sense " + ref);
        return ref;
      }
      const auto as_entity = with_prefix(ref, kEntityPrefix);
      const auto as_sense = with_prefix(ref, kSensePrefix);
      const bool e = kb.entity_by_id_.contains(as_entity);
      const bool s = kb.sense_by_id_.contains(as_sense);
      if (e && s) fail(src, line, "ambiguous concept reference " + ref + " (use e: or s:)");
      if (e) return as_entity;
      if (s) return as_sense;
      dangling(src, line, "unknown concept " + ref);
    };
    std::set<RelationFact> seen;
    for (const auto& line : table_lines(src)) {
      if (line.fields.size() != 3) fail(src, line.number, "expected subject, relation, object");
      if (line.fields[1].empty()) fail(src, line.number, "empty relation id");
      RelationFact f{resolve(line.fields[0], line.number), line.fields[1], resolve(line.fields[2], line.number)};
      if (!seen.insert(f).second) fail(src, line.number, "duplicate fact");
      kb.facts_by_relation_[f.relation].push_back(kb.facts_.size());
      kb.facts_.push_back(std::move(f));
    }
  }

  {
    const auto& src = sources.phrases;
    for (const auto& line : table_lines(src)) {
      if (line.fields.size() != 2) fail(src, line.number, "expected phrase, relation_id");
      RelationPhrase p{normalized_tokens(line.fields[0]), line.fields[1]};
      if (p.tokens.empty()) fail(src, line.number, "empty phrase");
      if (p.relation.empty()) fail(src, line.number, "empty relation id");
      if (!kb.phrase_index_.emplace(p.tokens, p.relation).second)
        fail(src, line.number, "duplicate phrase " + line.fields[0]);
      if (!kb.facts_by_relation_.contains(p.relation))
        kb.warnings_.push_back(src.name + ":" + std::to_string(line.number) + ": relation " + p.relation +
                               " has no facts");
      kb.max_phrase_tokens_ = std::max(kb.max_phrase_tokens_, p.tokens.size());
      kb.phrases_.push_back(std::move(p));
    }
  }

  return kb;
}

const EntityRecord* KnowledgeBase::entity(std::string_view id) const {
  auto it = entity_by_id_.find(id);
  return it == entity_by_id_.end() ? nullptr : &entities_[it->second];
}

const ClassRecord* KnowledgeBase::class_record(std::string_view id) const {
  auto it = class_by_id_.find(id);
  return it == class_by_id_.end() ? nullptr : &classes_[it->second];
}

const SenseRecord* KnowledgeBase::sense(std::string_view id) const {
  auto it = sense_by_id_.find(id);
  return it == sense_by_id_.end() ? nullptr : &senses_[it->second];
}

std::vector<std::string> KnowledgeBase::normalized_names(const EntityRecord& e) const {
  std::vector<std::string> names{normalize_phrase(e.canonical_name)};
  for (const auto& a : e.aliases) names.push_back(normalize_phrase(a));
  return names;
}

std::vector<const EntityRecord*> KnowledgeBase::entities_by_name(std::string_view name) const {
  std::vector<const EntityRecord*> out;
  if (auto it = name_index_.find(normalize_phrase(name)); it != name_index_.end())
    for (auto i : it->second) out.push_back(&entities_[i]);
  return out;
}

std::vector<std::string> KnowledgeBase::closure(std::string_view start, const EdgeMap& edges) const {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen{std::string(start)};
  std::vector<std::string> frontier{std::string(start)};
  while (!frontier.empty()) {
    std::set<std::string> next;
    for (const auto& node : frontier) {
      auto it = edges.find(node);
      if (it == edges.end()) continue;
      for (const auto& up : it->second)
        if (!seen.contains(up)) next.insert(up);
    }
    frontier.assign(next.begin(), next.end());
    for (const auto& n : frontier) {
      seen.insert(n);
      out.push_back(n);
    }
  }
  return out;
}

std::vector<std::string> KnowledgeBase::superclass_closure(std::string_view class_id) const {
  if (!has_class(class_id)) throw ReferenceError("unknown class " + std::string(class_id));
  return closure(class_id, class_edges_);
}

std::vector<std::string> KnowledgeBase::hypernym_closure(std::string_view sense_id) const {
  if (sense(sense_id) == nullptr) throw ReferenceError("unknown sense " + std::string(sense_id));
  return closure(sense_id, hypernym_edges_);
}

std::vector<const SenseRecord*> KnowledgeBase::sense_candidates(std::string_view lemma) const {
  std::vector<const SenseRecord*> out;
  if (auto it = lemma_index_.find(normalize_phrase(lemma)); it != lemma_index_.end())
    for (auto i : it->second) out.push_back(&senses_[i]);
  return out;
}

std::vector<RelationFact> KnowledgeBase::facts_matching(std::string_view relation,
                                                        std::string_view concept_ref) const {
  std::vector<RelationFact> out;
  auto it = facts_by_relation_.find(relation);
  if (it == facts_by_relation_.end()) return out;
  for (auto i : it->second) {
    const auto& f = facts_[i];
    if (f.subject == concept_ref || f.object == concept_ref) out.push_back(f);
  }
  return out;
}

std::optional<PhraseMatch> KnowledgeBase::longest_phrase_at(std::span<const std::string> tokens,
                                                            std::size_t pos) const {
  if (pos >= tokens.size()) return std::nullopt;
  const auto max_len = std::min(max_phrase_tokens_, tokens.size() - pos);
  for (auto len = max_len; len >= 1; --len) {
    std::vector<std::string> key(tokens.begin() + static_cast<std::ptrdiff_t>(pos),
                                 tokens.begin() + static_cast<std::ptrdiff_t>(pos + len));
    if (auto it = phrase_index_.find(key); it != phrase_index_.end()) return PhraseMatch{pos, len, it->second};
  }
  return std::nullopt;
}

std::optional<std::string> KnowledgeBase::relation_for_phrase(std::span<const std::string> tokens) const {
  for (std::size_t pos = 0; pos < tokens.size(); ++pos)
    if (auto m = longest_phrase_at(tokens, pos)) return m->relation;
  return std::nullopt;
}

}  // namespace svsm
