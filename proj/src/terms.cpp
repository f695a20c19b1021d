#include "svsm/terms.hpp"

#include <cmath>

#include "svsm/error.hpp"
#include "svsm/text.hpp"

namespace svsm {

namespace {

void append_field(std::string& out, const std::optional<std::string>& field) {
  if (!field) {
    out.push_back('*');
    return;
  }
  const auto lowered = to_lower_ascii(*field);
  if (lowered == "*") {
    out += "\\*";
    return;
  }
  for (char c : lowered) {
    if (c == '|' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
}

}  // namespace

std::string Triple::encode() const {
  if (!name && !hyper && !id) throw PreconditionError("triple with every slot wildcard");
  std::string out(kind == TripleKind::kEntity ? kEntityTriplePrefix : kSenseTriplePrefix);
  append_field(out, name);
  out.push_back('|');
  append_field(out, hyper);
  out.push_back('|');
  append_field(out, id);
  return out;
}

std::string encode(const GeneralizedTerm& term) {
  if (const auto* kw = std::get_if<Keyword>(&term)) return std::string(kKeywordPrefix) + kw->stem;
  return std::get<Triple>(term).encode();
}

void TermBag::add_encoded(const std::string& key, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw PreconditionError("term weight must be positive and finite: " + key);
  weights_[key] += weight;
}

void TermBag::merge_max(const std::string& key, double weight) {
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw PreconditionError("term weight must be positive and finite: " + key);
  auto [it, inserted] = weights_.emplace(key, weight);
  if (!inserted && it->second < weight) it->second = weight;
}

double TermBag::weight(std::string_view key) const {
  auto it = weights_.find(key);
  return it == weights_.end() ? 0.0 : it->second;
}

}  // namespace svsm
