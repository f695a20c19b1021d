#include <gtest/gtest.h>

#include <random>

#include "svsm/error.hpp"
#include "svsm/eval.hpp"

using namespace svsm;

namespace {

Curve constant(double v) { return Curve::Constant(v); }

}  // namespace

TEST(AveragePrecision, Examples) {
  const RelevantSet one{"R1"};
  EXPECT_DOUBLE_EQ(average_precision(Ranking{"R1"}, one), 1.0);
  const RelevantSet two{"R1", "R2"};
  EXPECT_NEAR(average_precision(Ranking{"R1", "N1", "R2"}, two), (1.0 + 2.0 / 3.0) / 2.0, 1e-15);
  EXPECT_NEAR(average_precision(Ranking{"R1", "N1", "R2"}, two), 0.8333, 1e-4);
  EXPECT_DOUBLE_EQ(average_precision(Ranking{"N1", "N2"}, one), 0.0);
  EXPECT_DOUBLE_EQ(average_precision(Ranking{}, one), 0.0);
  EXPECT_THROW(average_precision(Ranking{"R1"}, RelevantSet{}), PreconditionError);
}

TEST(MeanAveragePrecision, Examples) {
  Qrels qrels{{"q1", {"a"}}, {"q2", {"a", "b"}}};
  svsm::Run run{{"q1", {"a"}}, {"q2", {"x", "a", "y", "z", "b"}}};
  // q2: (1/2 + 2/5) / 2 = 0.45
  EXPECT_NEAR(mean_average_precision(run, qrels), (1.0 + 0.45) / 2.0, 1e-15);

  Qrels three{{"q1", {"r1", "r2"}}, {"q2", {"r"}}, {"q3", {"r"}}};
  svsm::Run r3{{"q1", {"r1", "n", "r2"}}, {"q2", {"n"}}, {"q3", {"r"}}};
  EXPECT_NEAR(mean_average_precision(r3, three), 0.6111, 1e-4);

  Qrels single{{"q", {"r1", "r2"}}};
  svsm::Run rs{{"q", {"r1", "n", "r2"}}};
  EXPECT_DOUBLE_EQ(mean_average_precision(rs, single), average_precision(rs["q"], single["q"]));
}

TEST(Evaluate, MissingAndUnjudgedQueries) {
  Qrels qrels{{"q1", {"a"}}, {"q2", {"b"}}, {"q3", {}}};
  svsm::Run run{{"q1", {"a"}}, {"q9", {"a"}}};
  const auto report = evaluate(run, qrels);
  ASSERT_EQ(report.queries.size(), 2u);
  EXPECT_EQ(report.queries[1].query_id, "q2");
  EXPECT_DOUBLE_EQ(report.queries[1].ap, 0.0);
  EXPECT_DOUBLE_EQ(report.map, 0.5);
  EXPECT_EQ(report.warnings.size(), 2u);
  EXPECT_THROW(evaluate(run, Qrels{{"q3", {}}}), PreconditionError);
}

TEST(InterpolatedCurve, Examples) {
  const RelevantSet one{"r"};
  EXPECT_TRUE((interpolated_curve(Ranking{"n", "r"}, one) == constant(0.5)).all());
  EXPECT_TRUE((interpolated_curve(Ranking{"r", "n"}, one) == constant(1.0)).all());
  EXPECT_TRUE((interpolated_curve(Ranking{"n"}, one) == constant(0.0)).all());

  // two relevant at ranks 1 and 4: recall 0.5 at P=1, recall 1 at P=0.5
  const auto c = interpolated_curve(Ranking{"r1", "n", "n2", "r2"}, RelevantSet{"r1", "r2"});
  for (int i = 0; i <= 5; ++i) EXPECT_DOUBLE_EQ(c(i), 1.0) << i;
  for (int i = 6; i <= 10; ++i) EXPECT_DOUBLE_EQ(c(i), 0.5) << i;

  // three relevant, only one retrieved: levels above 1/3 are zero
  const auto partial = interpolated_curve(Ranking{"r1"}, RelevantSet{"r1", "r2", "r3"});
  for (int i = 0; i <= 3; ++i) EXPECT_DOUBLE_EQ(partial(i), 1.0) << i;
  for (int i = 4; i <= 10; ++i) EXPECT_DOUBLE_EQ(partial(i), 0.0) << i;
}

TEST(InterpolatedCurve, RecallBoundaryIsExact) {
  // 10 relevant, 3 found first: recall exactly 0.3 must count for level 0.3
  RelevantSet rel;
  for (int i = 0; i < 10; ++i) rel.insert("r" + std::to_string(i));
  const auto c = interpolated_curve(Ranking{"r0", "r1", "r2"}, rel);
  EXPECT_DOUBLE_EQ(c(3), 1.0);
  EXPECT_DOUBLE_EQ(c(4), 0.0);
}

TEST(FCurve, Examples) {
  Curve p = Curve::Zero();
  p(0) = 0.9;
  p(5) = 0.5;
  p(10) = 1.0;
  const auto f = f_from_curve(p);
  EXPECT_DOUBLE_EQ(f(0), 0.0);
  EXPECT_DOUBLE_EQ(f(5), 0.5);
  EXPECT_DOUBLE_EQ(f(10), 1.0);
  EXPECT_DOUBLE_EQ(f(3), 0.0);
  EXPECT_DOUBLE_EQ(recall_levels()(3), 0.3);
}

TEST(AverageCurves, Examples) {
  const std::vector<Curve> same{constant(0.4), constant(0.4)};
  EXPECT_TRUE(average_curves(same).precision.isApprox(constant(0.4)));
  Curve a = constant(1.0), b = constant(0.0);
  const std::vector<Curve> split{a, b};
  EXPECT_DOUBLE_EQ(average_curves(split).precision(5), 0.5);
  EXPECT_THROW(average_curves(std::vector<Curve>{}), PreconditionError);
}

TEST(AverageCurves, AveragedFBoundedByHarmonicOfAverages) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int round = 0; round < 100; ++round) {
    std::vector<Curve> curves(2 + rng() % 8);
    for (auto& c : curves) c = Curve::NullaryExpr([&] { return u(rng); });
    const auto avg = average_curves(curves);
    const Curve harmonic = f_from_curve(avg.precision);
    EXPECT_TRUE((avg.f <= harmonic + 1e-12).all());
  }
}

TEST(Randomization, PaperCountsThroughPValueIdentity) {
  EXPECT_NEAR(two_sided_p(1531, 1572, 100000), 0.0310, 5e-5);
  EXPECT_NEAR(two_sided_p(2337, 2499, 100000), 0.0484, 5e-5);
  EXPECT_NEAR(two_sided_p(5299, 5472, 100000), 0.1077, 5e-5);
  EXPECT_THROW(two_sided_p(1, 1, 0), PreconditionError);
}

TEST(Randomization, IdenticalListsGivePOne) {
  const std::vector<double> a{0.2, 0.5, 0.9};
  const auto mc = randomization_test(a, a, 1000, 1);
  EXPECT_DOUBLE_EQ(mc.diff, 0.0);
  EXPECT_DOUBLE_EQ(mc.p_two_sided, 1.0);
  EXPECT_EQ(mc.n_plus, 1000u);
  EXPECT_EQ(mc.n_minus, 1000u);
  EXPECT_DOUBLE_EQ(exhaustive_randomization(a, a).p_two_sided, 1.0);
}

TEST(Randomization, ExhaustiveHandEnumerations) {
  const std::vector<double> one_a{1.0}, one_b{0.0};
  const auto r1 = exhaustive_randomization(one_a, one_b);
  EXPECT_EQ(r1.n_permutations, 2u);
  EXPECT_DOUBLE_EQ(r1.p_two_sided, 1.0);

  const std::vector<double> a{1.0, 1.0}, b{0.0, 0.0};
  const auto r2 = exhaustive_randomization(a, b);
  EXPECT_EQ(r2.n_permutations, 4u);
  EXPECT_DOUBLE_EQ(r2.diff, 1.0);
  EXPECT_EQ(r2.n_plus, 1u);
  EXPECT_EQ(r2.n_minus, 1u);
  EXPECT_DOUBLE_EQ(r2.p_two_sided, 0.5);
}

TEST(Randomization, DeterministicAndSymmetric) {
  const std::vector<double> a{0.9, 0.7, 0.8, 0.3, 0.6, 0.95}, b{0.5, 0.6, 0.2, 0.4, 0.1, 0.7};
  const auto x = randomization_test(a, b, 20000, 42);
  const auto y = randomization_test(a, b, 20000, 42);
  EXPECT_EQ(x.n_plus, y.n_plus);
  EXPECT_EQ(x.n_minus, y.n_minus);
  const auto swapped = randomization_test(b, a, 20000, 42);
  EXPECT_DOUBLE_EQ(swapped.diff, -x.diff);
  EXPECT_DOUBLE_EQ(swapped.p_two_sided, x.p_two_sided);
  EXPECT_NEAR(x.p_two_sided, exhaustive_randomization(a, b).p_two_sided, 0.02);
  EXPECT_THROW(randomization_test(std::vector<double>{1}, std::vector<double>{0}, 10, 1), PreconditionError);
  EXPECT_THROW(randomization_test(a, std::vector<double>{1, 2}, 10, 1), PreconditionError);
}
