#include "svsm/vsm_index.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "svsm/error.hpp"

namespace svsm {

double idf_factor(std::size_t df, std::size_t n_docs) {
  if (df < 1 || df > n_docs) throw PreconditionError("document frequency outside [1, n_docs]");
  return std::log1p(static_cast<double>(n_docs) / static_cast<double>(df));
}

double term_weight(double tf, std::size_t df, std::size_t n_docs) {
  if (!(tf >= 1.0)) throw PreconditionError("term frequency must be at least 1");
  return (1.0 + std::log(tf)) * idf_factor(df, n_docs);
}

Index Index::build(std::vector<std::pair<std::string, TermBag>> documents, Metadata metadata) {
  if (documents.empty()) throw PreconditionError("cannot index an empty corpus");
  std::sort(documents.begin(), documents.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < documents.size(); ++i)
    if (documents[i].first == documents[i - 1].first)
      throw PreconditionError("duplicate document id " + documents[i].first);

  Index index;
  index.metadata_ = std::move(metadata);
  const auto n_docs = documents.size();
  std::map<std::string, std::vector<std::pair<std::uint32_t, double>>, std::less<>> raw;
  for (std::uint32_t d = 0; d < n_docs; ++d) {
    index.doc_ids_.push_back(documents[d].first);
    for (const auto& [term, tf] : documents[d].second) raw[term].emplace_back(d, tf);
  }

  std::vector<double> sq(n_docs, 0.0);
  for (auto& [term, list] : raw) {
    std::vector<Posting> postings;
    postings.reserve(list.size());
    for (const auto& [doc, tf] : list) {
      const double w = term_weight(tf, list.size(), n_docs);
      postings.push_back({doc, w});
      sq[doc] += w * w;
    }
    index.terms_.push_back(term);
    index.postings_.push_back(std::move(postings));
  }
  index.norms_.resize(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) index.norms_[d] = std::sqrt(sq[d]);
  index.rebuild_lookup();
  return index;
}

void Index::rebuild_lookup() {
  term_lookup_.clear();
  for (std::uint32_t t = 0; t < terms_.size(); ++t) term_lookup_.emplace(terms_[t], t);
}

std::optional<std::uint32_t> Index::term_id(std::string_view term) const {
  auto it = term_lookup_.find(term);
  if (it == term_lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<RankedResult> Index::search(const TermBag& query, std::size_t k) const {
  if (k == 0) throw PreconditionError("k must be at least 1");
  const auto n_docs = doc_ids_.size();
  std::vector<double> dot(n_docs, 0.0);
  double q_sq = 0.0;
  for (const auto& [term, w] : query) {
    const auto id = term_id(term);
    if (!id) continue;
    const auto& list = postings_[*id];
    const double qw = w * idf_factor(list.size(), n_docs);
    q_sq += qw * qw;
    for (const auto& p : list) dot[p.doc] += qw * p.weight;
  }
  std::vector<RankedResult> out;
  if (q_sq == 0.0) return out;
  const double q_norm = std::sqrt(q_sq);

  std::vector<std::pair<double, std::uint32_t>> scored;
  for (std::uint32_t d = 0; d < n_docs; ++d) {
    if (dot[d] <= 0.0 || norms_[d] == 0.0) continue;
    scored.emplace_back(std::min(1.0, dot[d] / (q_norm * norms_[d])), d);
  }
  auto better = [](const auto& a, const auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; };
  const auto take = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(), better);
  for (std::size_t r = 0; r < take; ++r) out.push_back({doc_ids_[scored[r].second], scored[r].first, r + 1});
  return out;
}

IndexStats Index::stats() const {
  IndexStats s;
  s.documents = doc_ids_.size();
  s.vocabulary = terms_.size();
  for (const auto& t : terms_) {
    if (t.starts_with(kKeywordPrefix)) ++s.keyword_terms;
    else if (t.starts_with(kEntityTriplePrefix)) ++s.entity_terms;
    else if (t.starts_with(kSenseTriplePrefix)) ++s.sense_terms;
  }
  return s;
}

// Container layout, all integers little-endian:
//   "SVSM" | u32 version
//   u32 metadata count | (str key, str value)*
//   u64 N | str doc_id * N
//   u64 V | (str term, u32 df, (u32 doc, f64 weight) * df) * V
//   f64 norm * N
//   u32 CRC-32 of every preceding byte
// where str = u32 byte length followed by the bytes.
namespace {

constexpr char kMagic[4] = {'S', 'V', 'S', 'M'};

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { buf_.append(static_cast<const char*>(p), n); }
  template <typename T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) buf_.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF));
  }
  void u32(std::uint32_t v) { le(v); }
  void u64(std::uint64_t v) { le(v); }
  void f64(double v) { le(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }
  std::string& buffer() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(std::string_view data) : data_(data) {}
  template <typename T>
  T le() {
    need(sizeof(T));
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(v);
  }
  std::uint32_t u32() { return le<std::uint32_t>(); }
  std::uint64_t u64() { return le<std::uint64_t>(); }
  double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }
  std::string str() {
    const auto n = u32();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw CorruptFileError("index file is truncated");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(std::string_view data) {
  return static_cast<std::uint32_t>(
      crc32(crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
}

}  // namespace

void Index::write(std::ostream& out) const {
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(metadata_.size()));
  for (const auto& [k, v] : metadata_) {
    w.str(k);
    w.str(v);
  }
  w.u64(doc_ids_.size());
  for (const auto& d : doc_ids_) w.str(d);
  w.u64(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    w.str(terms_[t]);
    w.u32(static_cast<std::uint32_t>(postings_[t].size()));
    for (const auto& p : postings_[t]) {
      w.u32(p.doc);
      w.f64(p.weight);
    }
  }
  for (double n : norms_) w.f64(n);
  w.u32(crc_of(w.buffer()));
  out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
  if (!out) throw Error("failed to write index");
}

Index Index::read(std::istream& in) {
  const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (data.size() < sizeof kMagic + 4 || std::memcmp(data.data(), kMagic, sizeof kMagic) != 0)
    throw CorruptFileError("not an index file (bad magic)");
  {
    Reader header(std::string_view(data).substr(sizeof kMagic, 4));
    const auto version = header.u32();
    if (version != kFormatVersion)
      throw VersionError("unsupported index format version " + std::to_string(version) + " (expected " +
                         std::to_string(kFormatVersion) + ")");
  }
  if (data.size() < sizeof kMagic + 8) throw CorruptFileError("index file is truncated");
  const auto body = std::string_view(data).substr(0, data.size() - 4);
  if (Reader(std::string_view(data).substr(data.size() - 4)).u32() != crc_of(body))
    throw CorruptFileError("index checksum mismatch");

  Reader r(body.substr(sizeof kMagic + 4));
  Index index;
  const auto n_meta = r.u32();
  for (std::uint32_t i = 0; i < n_meta; ++i) {
    auto k = r.str();
    index.metadata_.emplace(std::move(k), r.str());
  }
  const auto n_docs = r.u64();
  for (std::uint64_t i = 0; i < n_docs; ++i) index.doc_ids_.push_back(r.str());
  const auto n_terms = r.u64();
  for (std::uint64_t t = 0; t < n_terms; ++t) {
    index.terms_.push_back(r.str());
    const auto df = r.u32();
    std::vector<Posting> list;
    for (std::uint32_t i = 0; i < df; ++i) {
      Posting p;
      p.doc = r.u32();
      p.weight = r.f64();
      if (p.doc >= n_docs || (!list.empty() && p.doc <= list.back().doc) || !(p.weight > 0.0))
        throw CorruptFileError("invalid posting in index file");
      list.push_back(p);
    }
    index.postings_.push_back(std::move(list));
  }
  for (std::uint64_t i = 0; i < n_docs; ++i) index.norms_.push_back(r.f64());
  if (!r.done()) throw CorruptFileError("trailing bytes in index file");
  index.rebuild_lookup();
  return index;
}

void Index::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write(out);
}

Index Index::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read(in);
}

}  // namespace svsm
