#include "svsm/eval.hpp"

#include <cmath>
#include <random>

#include "svsm/error.hpp"

namespace svsm {

Curve recall_levels() { return Curve::LinSpaced(kRecallLevels, 0.0, 1.0); }

double average_precision(std::span<const std::string> ranking, const RelevantSet& relevant) {
  if (relevant.empty()) throw PreconditionError("query has no relevant documents");
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (!relevant.contains(ranking[i])) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(relevant.size());
}

Curve interpolated_curve(std::span<const std::string> ranking, const RelevantSet& relevant) {
  if (relevant.empty()) throw PreconditionError("query has no relevant documents");
  const auto total = relevant.size();
  // (hits, precision) at every rank holding a relevant document; other
  // ranks never beat the preceding relevant rank at equal recall.
  std::vector<std::pair<std::size_t, double>> points;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (!relevant.contains(ranking[i])) continue;
    ++hits;
    points.emplace_back(hits, static_cast<double>(hits) / static_cast<double>(i + 1));
  }
  Curve out = Curve::Zero();
  double best = 0.0;
  auto p = points.rbegin();
  for (int level = kRecallLevels - 1; level >= 0; --level) {
    // recall hits/total >= level/10, compared exactly in integers
    while (p != points.rend() && p->first * 10 >= static_cast<std::size_t>(level) * total) {
      best = std::max(best, p->second);
      ++p;
    }
    out(level) = best;
  }
  return out;
}

Curve f_from_curve(const Curve& precision) {
  const Curve r = recall_levels();
  const Curve denom = precision + r;
  return (denom > 0.0).select(2.0 * precision * r / denom.max(1e-300), Curve::Zero());
}

AveragedCurves average_curves(std::span<const Curve> per_query_precision) {
  if (per_query_precision.empty()) throw PreconditionError("no curves to average");
  AveragedCurves out;
  for (const auto& c : per_query_precision) {
    out.precision += c;
    out.f += f_from_curve(c);
  }
  const auto n = static_cast<double>(per_query_precision.size());
  out.precision /= n;
  out.f /= n;
  return out;
}

EvalReport evaluate(const Run& run, const Qrels& qrels) {
  EvalReport report;
  for (const auto& [qid, _] : run)
    if (!qrels.contains(qid)) report.warnings.push_back("query " + qid + " has no judgments; skipped");
  std::vector<Curve> curves;
  for (const auto& [qid, relevant] : qrels) {
    if (relevant.empty()) {
      report.warnings.push_back("query " + qid + " has no relevant documents; excluded");
      continue;
    }
    static const Ranking kEmpty;
    auto it = run.find(qid);
    const Ranking& ranking = it == run.end() ? kEmpty : it->second;
    QueryEvaluation q;
    q.query_id = qid;
    q.ap = average_precision(ranking, relevant);
    q.precision = interpolated_curve(ranking, relevant);
    q.f = f_from_curve(q.precision);
    curves.push_back(q.precision);
    report.queries.push_back(std::move(q));
  }
  if (report.queries.empty()) throw PreconditionError("no evaluable queries");
  double sum = 0.0;
  for (const auto& q : report.queries) sum += q.ap;
  report.map = sum / static_cast<double>(report.queries.size());
  report.curves = average_curves(curves);
  return report;
}

double mean_average_precision(const Run& run, const Qrels& qrels) { return evaluate(run, qrels).map; }

double two_sided_p(std::uint64_t n_minus, std::uint64_t n_plus, std::uint64_t n_permutations) {
  if (n_permutations == 0) throw PreconditionError("n_permutations must be positive");
  return static_cast<double>(n_minus + n_plus) / static_cast<double>(n_permutations);
}

namespace {

struct Paired {
  Eigen::ArrayXd diffs;
  double map_a = 0.0;
  double map_b = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
};

Paired prepare(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw PreconditionError("AP lists differ in length");
  if (a.empty()) throw PreconditionError("AP lists are empty");
  const auto n = static_cast<Eigen::Index>(a.size());
  const Eigen::Map<const Eigen::ArrayXd> va(a.data(), n);
  const Eigen::Map<const Eigen::ArrayXd> vb(b.data(), n);
  Paired p;
  p.diffs = va - vb;
  p.map_a = va.mean();
  p.map_b = vb.mean();
  p.observed = p.diffs.sum() / static_cast<double>(n);
  // Permutations that reproduce |d| up to summation-order rounding count
  // as ties.
  p.tolerance = 1e-12 * std::max(1.0, p.diffs.abs().sum() / static_cast<double>(n));
  return p;
}

// Tallies one permuted statistic.
struct Tally {
  double threshold;
  double tolerance;
  std::uint64_t plus = 0;
  std::uint64_t minus = 0;
  std::uint64_t extreme = 0;

  void add(double d_star) {
    const bool hi = d_star >= threshold - tolerance;
    const bool lo = d_star <= -threshold + tolerance;
    plus += hi;
    minus += lo;
    extreme += hi || lo;
  }
};

SigTestResult finish(const Paired& p, const Tally& t, std::uint64_t n, std::uint64_t seed) {
  SigTestResult r;
  r.map_a = p.map_a;
  r.map_b = p.map_b;
  r.diff = p.map_a - p.map_b;
  r.n_plus = t.plus;
  r.n_minus = t.minus;
  r.n_permutations = n;
  r.seed = seed;
  r.p_two_sided = static_cast<double>(t.extreme) / static_cast<double>(n);
  return r;
}

}  // namespace

SigTestResult randomization_test(std::span<const double> aps_a, std::span<const double> aps_b,
                                 std::uint64_t n_permutations, std::uint64_t seed) {
  if (aps_a.size() < 2) throw PreconditionError("randomization test needs at least two queries");
  if (n_permutations == 0) throw PreconditionError("n_permutations must be positive");
  const auto p = prepare(aps_a, aps_b);
  const auto n = p.diffs.size();
  std::mt19937_64 rng(seed);
  Tally tally{std::abs(p.observed), p.tolerance};
  Eigen::ArrayXd signs(n);
  for (std::uint64_t s = 0; s < n_permutations; ++s) {
    std::uint64_t bits = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i % 64 == 0) bits = rng();
      signs(i) = (bits >> (i % 64)) & 1U ? -1.0 : 1.0;
    }
    tally.add((signs * p.diffs).sum() / static_cast<double>(n));
  }
  return finish(p, tally, n_permutations, seed);
}

SigTestResult exhaustive_randomization(std::span<const double> aps_a, std::span<const double> aps_b) {
  if (aps_a.size() > 20) throw PreconditionError("exhaustive randomization supports at most 20 queries");
  const auto p = prepare(aps_a, aps_b);
  const auto n = p.diffs.size();
  const std::uint64_t total = std::uint64_t{1} << n;
  Tally tally{std::abs(p.observed), p.tolerance};
  Eigen::ArrayXd signs(n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (Eigen::Index i = 0; i < n; ++i) signs(i) = (mask >> i) & 1U ? -1.0 : 1.0;
    tally.add((signs * p.diffs).sum() / static_cast<double>(n));
  }
  return finish(p, tally, total, 0);
}

}  // namespace svsm
