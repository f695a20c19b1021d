#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "svsm/error.hpp"
#include "svsm/eval.hpp"
#include "svsm/expansion.hpp"
#include "svsm/knowledge_base.hpp"
#include "svsm/text.hpp"
#include "svsm/trec_io.hpp"
#include "svsm/vsm_index.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEmpty = 1;
constexpr int kExitInput = 2;

// Thrown for results that are well-formed but empty.
struct EmptyResult : svsm::Error {
  using svsm::Error::Error;
};

struct KbOptions {
  std::string dir;
  std::string entities, taxonomy, lexicon, facts, phrases;
  std::string stopwords;

  void add_to(CLI::App& app) {
    app.add_option("--kb-dir", dir, "directory holding entities/taxonomy/lexicon/facts/phrases .tsv");
    app.add_option("--entities", entities, "entity catalog (overrides --kb-dir)");
    app.add_option("--taxonomy", taxonomy, "class taxonomy (overrides --kb-dir)");
    app.add_option("--lexicon", lexicon, "sense lexicon (overrides --kb-dir)");
    app.add_option("--facts", facts, "relation facts (overrides --kb-dir)");
    app.add_option("--phrases", phrases, "relation phrases (overrides --kb-dir)");
    app.add_option("--stopwords", stopwords, "stopword list, one word per line (default: built-in English)");
  }

  svsm::KnowledgeBase load() const {
    svsm::KnowledgeBasePaths paths;
    if (!dir.empty()) paths = svsm::KnowledgeBasePaths::in_directory(dir);
    auto pick = [](std::filesystem::path& slot, const std::string& flag, const char* name) {
      if (!flag.empty()) slot = flag;
      if (slot.empty()) throw svsm::Error(std::string("no ") + name + " table given (use --kb-dir or --" + name + ")");
    };
    pick(paths.entities, entities, "entities");
    pick(paths.taxonomy, taxonomy, "taxonomy");
    pick(paths.lexicon, lexicon, "lexicon");
    pick(paths.facts, facts, "facts");
    pick(paths.phrases, phrases, "phrases");
    auto kb = svsm::KnowledgeBase::load(paths);
    for (const auto& w : kb.warnings()) fmt::print(std::cerr, "warning: {}\n", w);
    return kb;
  }

  svsm::StopwordList load_stopwords() const {
    return stopwords.empty() ? svsm::StopwordList::english() : svsm::StopwordList::from_file(stopwords);
  }
};

svsm::SearchModel model_from(const std::string& name) {
  auto m = svsm::parse_search_model(name);
  if (!m) throw svsm::Error("unknown model '" + name + "' (keyword, wordnet, kw-ne-wh, semantic)");
  return *m;
}

std::string read_input(const std::string& path) {
  if (!std::filesystem::exists(path)) throw svsm::Error("file not found: " + path);
  return svsm::read_text_file(path);
}

void write_output(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw svsm::Error("cannot write " + path);
  out << contents;
  if (!out) throw svsm::Error("write failed: " + path);
}

// index ------------------------------------------------------------------

struct IndexCommand {
  KbOptions kb;
  std::string corpus, index, model = "semantic";
  std::size_t window = svsm::kDocumentWindow;

  int run() const {
    const auto selected = model_from(model);
    const auto base = kb.load();
    const auto stopwords = kb.load_stopwords();
    const auto records = svsm::parse_tab_records(read_input(corpus), corpus);

    std::vector<std::pair<std::string, svsm::TermBag>> docs;
    docs.reserve(records.size());
    for (const auto& r : records) {
      auto bag = svsm::analyze_document(r.text, base, stopwords, selected, window);
      if (bag.empty()) fmt::print(std::cerr, "warning: document {} has no index terms\n", r.id);
      docs.emplace_back(r.id, std::move(bag));
    }
    svsm::Index::Metadata meta{{"model", std::string(svsm::to_string(selected))},
                               {"window", std::to_string(window)}};
    const auto built = svsm::Index::build(std::move(docs), std::move(meta));
    built.save(index);
    const auto s = built.stats();
    fmt::print("docs={} vocabulary={} ne_terms={} wn_terms={} kw_terms={}\n", s.documents, s.vocabulary,
               s.entity_terms, s.sense_terms, s.keyword_terms);
    return kExitOk;
  }
};

// search -----------------------------------------------------------------

std::string triple_list(const svsm::TermBag& bag) {
  std::string out;
  for (const auto& [key, w] : bag) out += fmt::format("    {} {:.6f}\n", key, w);
  return out;
}

std::string explain(const std::string& qid, const std::string& text, const svsm::QueryAnalysis& q,
                    const svsm::KnowledgeBase& kb) {
  std::string out = fmt::format("query {}: {}\n", qid, text);
  const auto& tokens = q.annotated.tokens;
  auto span_text = [&](std::size_t first, std::size_t last) {
    std::string s;
    for (auto i = first; i <= last && i < tokens.size(); ++i) {
      if (i > first) s.push_back(' ');
      s += tokens[i].surface;
    }
    return s;
  };

  out += "  entities:\n";
  for (const auto& a : q.annotated.ne_annotations) {
    out += fmt::format("    [{}-{}] \"{}\" entity={} class={}", a.first, a.last, span_text(a.first, a.last),
                       a.entity_id.value_or("*"), a.class_id.value_or("*"));
    if (a.qualifier_class) out += fmt::format(" qualifier={}", *a.qualifier_class);
    out.push_back('\n');
  }
  out += "  senses:\n";
  for (const auto& a : q.annotated.wn_annotations) {
    out += fmt::format("    [{}] {} -> {} hypernym={} overlap={}\n", a.token_index, a.lemma, a.sense_id,
                       a.hypernym_id.value_or("*"), a.overlap_score);
  }
  out += "  interrogative: ";
  if (q.interrogative_word && q.interrogative_class)
    out += fmt::format("{} -> {}\n", *q.interrogative_word, q.interrogative_class->encode());
  else
    out += "none\n";

  out += "  relation: ";
  if (q.relation.match) {
    const auto& m = *q.relation.match;
    out += fmt::format("{} (\"{}\")\n", m.relation, span_text(m.begin, m.begin + m.length - 1));
  } else if (q.relation.multi_relation) {
    out += "multiple phrases; spreading activation skipped\n";
  } else {
    out += "none\n";
  }

  out += "  spreading activation:\n";
  if (q.expansion) {
    for (const auto& a : q.expansion->activations) {
      const auto* e = kb.entity(a.added);
      out += fmt::format("    + {}{} weight={:.6f} from {} via {} {} {}\n", a.added,
                         e ? " (" + e->canonical_name + ")" : std::string(), a.weight, a.source, a.fact.subject,
                         a.fact.relation, a.fact.object);
    }
  }
  out += "  terms:\n" + triple_list(q.bag);
  for (const auto& w : q.warnings) out += fmt::format("  warning: {}\n", w);
  return out;
}

struct SearchCommand {
  KbOptions kb;
  std::string index, queries, run_path, model, tag = "svsm";
  std::size_t k = 1000;
  bool no_sa = false;
  bool want_explain = false;

  int run() const {
    const auto idx = svsm::Index::load(index);
    const auto& meta = idx.metadata();
    auto it = meta.find("model");
    if (it == meta.end()) throw svsm::Error(index + ": index has no model metadata");
    const auto index_model = model_from(it->second);
    if (!model.empty() && model_from(model) != index_model)
      throw svsm::Error(fmt::format("model mismatch: index built with {}, search requested {}", it->second, model));
    if (k == 0) throw svsm::Error("--k must be positive");

    const auto base = kb.load();
    const auto stopwords = kb.load_stopwords();
    auto records = svsm::parse_tab_records(read_input(queries), queries);
    std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < records.size(); ++i)
      if (records[i].id == records[i - 1].id) throw svsm::Error(queries + ": duplicate query id " + records[i].id);

    svsm::QueryOptions options;
    options.model = index_model;
    options.spreading_activation = !no_sa;

    std::vector<svsm::RunEntry> entries;
    std::string report;
    std::size_t nonempty = 0;
    for (const auto& r : records) {
      const auto analysis = svsm::query_terms(r.text, base, stopwords, options);
      for (const auto& w : analysis.warnings) fmt::print(std::cerr, "warning: query {}: {}\n", r.id, w);
      svsm::RunEntry entry{r.id, {}};
      if (analysis.bag.empty())
        fmt::print(std::cerr, "warning: query {} has no search terms; no results\n", r.id);
      else
        entry.results = idx.search(analysis.bag, k);
      nonempty += !entry.results.empty();
      if (want_explain) report += explain(r.id, r.text, analysis, base) + "\n";
      entries.push_back(std::move(entry));
    }

    std::ostringstream out;
    svsm::write_run(out, entries, tag);
    write_output(run_path, out.str());
    if (want_explain) write_output(run_path + ".explain.txt", report);
    fmt::print(std::cerr, "{} queries, {} with results\n", entries.size(), nonempty);
    if (nonempty == 0) throw EmptyResult("no query retrieved any document");
    return kExitOk;
  }
};

// eval -------------------------------------------------------------------

struct EvalCommand {
  std::string run_path, qrels_path, out_prefix;

  int run() const {
    const auto run = svsm::parse_run(read_input(run_path), run_path);
    const auto qrels = svsm::parse_qrels(read_input(qrels_path), qrels_path);
    svsm::EvalReport report;
    try {
      report = svsm::evaluate(run, qrels);
    } catch (const svsm::PreconditionError& e) {
      throw EmptyResult(e.what());
    }
    for (const auto& w : report.warnings) fmt::print(std::cerr, "warning: {}\n", w);

    std::ostringstream curve, ap;
    svsm::write_curve_csv(curve, report.curves);
    svsm::write_ap_csv(ap, report);
    write_output(out_prefix + ".curve.csv", curve.str());
    write_output(out_prefix + ".ap.csv", ap.str());
    fmt::print("queries={} map={:.6f}\n", report.queries.size(), report.map);
    return kExitOk;
  }
};

// sigtest ----------------------------------------------------------------

struct SigtestCommand {
  std::string a_path, b_path;
  std::uint64_t n = 100000;
  std::uint64_t seed = 0;
  bool exact = false;

  int run() const {
    const auto a = svsm::parse_ap_csv(read_input(a_path), a_path);
    const auto b = svsm::parse_ap_csv(read_input(b_path), b_path);
    std::map<std::string, double> by_id;
    for (const auto& [q, v] : b)
      if (!by_id.emplace(q, v).second) throw svsm::Error(b_path + ": duplicate query " + q);
    std::set<std::string> seen;
    std::vector<double> va, vb;
    for (const auto& [q, v] : a) {
      if (!seen.insert(q).second) throw svsm::Error(a_path + ": duplicate query " + q);
      auto it = by_id.find(q);
      if (it == by_id.end()) throw svsm::Error("query " + q + " is in " + a_path + " but not in " + b_path);
      va.push_back(v);
      vb.push_back(it->second);
    }
    if (va.size() != by_id.size()) throw svsm::Error("query ids differ between " + a_path + " and " + b_path);
    if (va.size() < 2) throw EmptyResult("need at least two queries");

    const auto result = exact ? svsm::exhaustive_randomization(va, vb) : svsm::randomization_test(va, vb, n, seed);
    fmt::print("{}\n", svsm::format_sigtest(result));
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic vector-space search: index, search, eval, sigtest"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

  IndexCommand index_cmd;
  auto* index = app.add_subcommand("index", "annotate a corpus and build an index");
  index_cmd.kb.add_to(*index);
  index->add_option("--corpus", index_cmd.corpus, "documents, one \"doc_id<TAB>text\" per line")->required();
  index->add_option("--index", index_cmd.index, "index file to write")->required();
  index->add_option("--model", index_cmd.model, "keyword, wordnet, kw-ne-wh or semantic")->capture_default_str();
  index->add_option("--window", index_cmd.window, "WSD context window (non-stopword tokens per side)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  SearchCommand search_cmd;
  auto* search = app.add_subcommand("search", "run a query batch into a TREC run file");
  search_cmd.kb.add_to(*search);
  search->add_option("--index", search_cmd.index, "index file")->required();
  search->add_option("--queries", search_cmd.queries, "queries, one \"query_id<TAB>text\" per line")->required();
  search->add_option("--run", search_cmd.run_path, "run file to write")->required();
  search->add_option("--model", search_cmd.model, "expected model; must match the index");
  search->add_option("--k", search_cmd.k, "results per query")->capture_default_str();
  search->add_option("--tag", search_cmd.tag, "run tag column")->capture_default_str();
  search->add_flag("--no-sa", search_cmd.no_sa, "disable spreading activation");
  search->add_flag("--explain", search_cmd.want_explain, "also write <run>.explain.txt");

  EvalCommand eval_cmd;
  auto* eval = app.add_subcommand("eval", "MAP and 11-point curves for a run");
  eval->add_option("--run", eval_cmd.run_path, "TREC run file")->required();
  eval->add_option("--qrels", eval_cmd.qrels_path, "TREC qrels file")->required();
  eval->add_option("--out", eval_cmd.out_prefix, "writes <out>.curve.csv and <out>.ap.csv")->required();

  SigtestCommand sig_cmd;
  auto* sig = app.add_subcommand("sigtest", "paired randomization test on two AP files");
  sig->add_option("--a", sig_cmd.a_path, "AP CSV of system A")->required();
  sig->add_option("--b", sig_cmd.b_path, "AP CSV of system B")->required();
  sig->add_option("--n", sig_cmd.n, "Monte Carlo samples")->capture_default_str()->check(CLI::PositiveNumber);
  sig->add_option("--seed", sig_cmd.seed, "random seed")->capture_default_str();
  sig->add_flag("--exact", sig_cmd.exact, "enumerate all 2^n swap patterns (n <= 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*index) return index_cmd.run();
    if (*search) return search_cmd.run();
    if (*eval) return eval_cmd.run();
    return sig_cmd.run();
  } catch (const EmptyResult& e) {
    fmt::print(std::cerr, "svsm: {}\n", e.what());
    return kExitEmpty;
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "svsm: {}\n", e.what());
    return kExitInput;
  }
}
