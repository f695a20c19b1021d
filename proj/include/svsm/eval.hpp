#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace svsm {

inline constexpr int kRecallLevels = 11;

/// Values at recall levels 0.0, 0.1, ..., 1.0.
using Curve = Eigen::Array<double, kRecallLevels, 1>;

/// The eleven standard recall levels.
Curve recall_levels();

using RelevantSet = std::set<std::string, std::less<>>;
using Ranking = std::vector<std::string>;

/// query id -> relevant doc ids.
using Qrels = std::map<std::string, RelevantSet, std::less<>>;
/// query id -> ranked doc ids.
using Run = std::map<std::string, Ranking, std::less<>>;

/// Mean over relevant documents of the precision at the rank where each is
/// retrieved; unretrieved relevant documents contribute zero.
double average_precision(std::span<const std::string> ranking, const RelevantSet& relevant);

/// Interpolated precision: at level r, the best precision at any achieved
/// recall >= r, or 0 once r exceeds the final recall.
Curve interpolated_curve(std::span<const std::string> ranking, const RelevantSet& relevant);

/// F = 2 P r / (P + r) at each level, 0 where P + r = 0.
Curve f_from_curve(const Curve& precision);

struct AveragedCurves {
  Curve precision = Curve::Zero();
  Curve f = Curve::Zero();
};

/// Level-wise means of the per-query precision curves and of their F curves.
AveragedCurves average_curves(std::span<const Curve> per_query_precision);

struct QueryEvaluation {
  std::string query_id;
  double ap = 0.0;
  Curve precision = Curve::Zero();
  Curve f = Curve::Zero();
};

struct EvalReport {
  std::vector<QueryEvaluation> queries;  // sorted by query id
  double map = 0.0;
  AveragedCurves curves;
  std::vector<std::string> warnings;
};

/// Evaluates every query of `qrels` that has at least one relevant doc.
/// Queries missing from the run score zero; run queries without judgments
/// are skipped with a warning. Throws PreconditionError when nothing is
/// evaluable.
EvalReport evaluate(const Run& run, const Qrels& qrels);

double mean_average_precision(const Run& run, const Qrels& qrels);

struct SigTestResult {
  double map_a = 0.0;
  double map_b = 0.0;
  double diff = 0.0;  // map_a - map_b
  std::uint64_t n_minus = 0;
  std::uint64_t n_plus = 0;
  double p_two_sided = 0.0;
  std::uint64_t n_permutations = 0;
  std::uint64_t seed = 0;
};

/// (n_minus + n_plus) / n_permutations.
double two_sided_p(std::uint64_t n_minus, std::uint64_t n_plus, std::uint64_t n_permutations);

// Paired randomization test. Each sample swaps every query's (a_i, b_i)
// with probability 1/2; n_plus counts samples with d* >= |d| and n_minus
// those with d* <= -|d|. The p-value is the fraction with |d*| >= |d|,
// which equals (n_minus + n_plus) / n whenever d != 0.
SigTestResult randomization_test(std::span<const double> aps_a, std::span<const double> aps_b,
                                 std::uint64_t n_permutations, std::uint64_t seed);

/// Same statistic over all 2^n swap patterns; n <= 20.
SigTestResult exhaustive_randomization(std::span<const double> aps_a, std::span<const double> aps_b);

}  // namespace svsm
