#include "oslpp/errors.hpp"
#include "oslpp/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

namespace oslpp {
namespace {

const LabelSpace kTwoKnown({0, 1}, 2);

/// Builds predictions class by class: `hits` correct out of `total`, misses
/// predicted as `wrong`.
void append(std::vector<ClassId>& pred, std::vector<ClassId>& truth, ClassId cls, int hits,
            int total, ClassId wrong) {
  for (int i = 0; i < total; ++i) {
    truth.push_back(cls);
    pred.push_back(i < hits ? cls : wrong);
  }
}

TEST(Evaluate, HandComputedExample) {
  std::vector<ClassId> pred, truth;
  append(pred, truth, 0, 8, 10, 1);  // 80%
  append(pred, truth, 1, 6, 10, 2);  // 60%
  append(pred, truth, 2, 3, 4, 0);   // 75%
  const auto r = evaluate(pred, truth, kTwoKnown);
  EXPECT_NEAR(r.os_star, 70.0, 1e-12);
  EXPECT_NEAR(r.unk, 75.0, 1e-12);
  EXPECT_NEAR(r.os, 215.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.hos, 2.0 * 70.0 * 75.0 / 145.0, 1e-12);
  EXPECT_DOUBLE_EQ(round1(r.os), 71.7);
  EXPECT_DOUBLE_EQ(round1(r.hos), 72.4);
  EXPECT_EQ(r.counts.at(0), 10);
  EXPECT_EQ(r.counts.at(2), 4);
  EXPECT_NEAR(r.per_class_acc.at(1), 60.0, 1e-12);
}

TEST(Evaluate, PerfectPredictions) {
  const std::vector<ClassId> truth{0, 1, 2, 2, 1};
  const auto r = evaluate(truth, truth, kTwoKnown);
  EXPECT_EQ(r.os_star, 100.0);
  EXPECT_EQ(r.unk, 100.0);
  EXPECT_EQ(r.os, 100.0);
  EXPECT_EQ(r.hos, 100.0);
}

TEST(Evaluate, Errors) {
  const std::vector<ClassId> truth{0, 1, 2};
  EXPECT_THROW(evaluate(std::vector<ClassId>{0, 1}, truth, kTwoKnown), ArgumentError);
  EXPECT_THROW(evaluate(truth, std::vector<ClassId>{0, 1, 7}, kTwoKnown), ArgumentError);
  // The unknown class has no samples.
  EXPECT_THROW(evaluate(std::vector<ClassId>{0, 1}, std::vector<ClassId>{0, 1}, kTwoKnown),
               ArgumentError);
  // A known class has no samples.
  EXPECT_THROW(evaluate(std::vector<ClassId>{0, 2}, std::vector<ClassId>{0, 2}, kTwoKnown),
               ArgumentError);
}

TEST(Hos, PublishedRowsAndEdgeCases) {
  EXPECT_NEAR(hos(92.6, 90.4), 91.5, 0.05);
  EXPECT_NEAR(hos(87.5, 77.8), 82.4, 0.05);
  EXPECT_EQ(hos(100.0, 0.0), 0.0);
  EXPECT_EQ(hos(0.0, 0.0), 0.0);
  for (double x : {0.5, 12.0, 63.25, 100.0}) EXPECT_NEAR(hos(x, x), x, 1e-12);
}

TEST(MeanScore, AveragesAndRejectsEmpty) {
  const std::vector<double> table{91.5, 89.0, 79.3, 92.3, 78.7, 93.6};
  EXPECT_NEAR(mean_score(table), 87.4, 0.05);
  EXPECT_THROW(mean_score(std::vector<double>{}), ArgumentError);
}

TEST(Round1, OneDecimal) {
  EXPECT_DOUBLE_EQ(round1(91.54), 91.5);
  EXPECT_DOUBLE_EQ(round1(91.56), 91.6);
  EXPECT_DOUBLE_EQ(round1(100.0), 100.0);
}

struct RandomCase {
  LabelSpace space;
  std::vector<ClassId> pred;
  std::vector<ClassId> truth;
};

RandomCase random_case(std::mt19937_64& rng) {
  const int n_known = std::uniform_int_distribution<int>(2, 6)(rng);
  std::vector<ClassId> known(static_cast<std::size_t>(n_known));
  for (int c = 0; c < n_known; ++c) known[static_cast<std::size_t>(c)] = 3 * c;
  LabelSpace space(known, 3 * n_known);
  std::vector<ClassId> all = known;
  all.push_back(space.unknown_id());
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  RandomCase rc{space, {}, {}};
  for (const auto c : all) {
    const int count = std::uniform_int_distribution<int>(1, 15)(rng);
    for (int i = 0; i < count; ++i) {
      rc.truth.push_back(c);
      rc.pred.push_back(std::bernoulli_distribution(0.6)(rng) ? c : all[pick(rng)]);
    }
  }
  return rc;
}

TEST(Evaluate, PropertiesOnRandomInputs) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    auto rc = random_case(rng);
    const auto r = evaluate(rc.pred, rc.truth, rc.space);
    for (double v : {r.os_star, r.unk, r.os, r.hos}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 100.0);
    }
    const auto c = static_cast<double>(rc.space.size());
    EXPECT_NEAR(r.os, c / (c + 1.0) * r.os_star + 1.0 / (c + 1.0) * r.unk, 1e-12);
    const double expected_hos =
        r.os_star + r.unk > 0.0 ? 2.0 * r.os_star * r.unk / (r.os_star + r.unk) : 0.0;
    EXPECT_NEAR(r.hos, expected_hos, 1e-12);

    // Shuffling samples changes nothing.
    std::vector<std::size_t> order(rc.pred.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<ClassId> p2, t2;
    for (const auto i : order) {
      p2.push_back(rc.pred[i]);
      t2.push_back(rc.truth[i]);
    }
    const auto shuffled = evaluate(p2, t2, rc.space);
    EXPECT_NEAR(shuffled.os_star, r.os_star, 1e-12);
    EXPECT_NEAR(shuffled.hos, r.hos, 1e-12);
    EXPECT_EQ(shuffled.counts, r.counts);
  }
}

TEST(Evaluate, OsStarIgnoresClassSizes) {
  std::vector<ClassId> p1, t1, p2, t2;
  append(p1, t1, 0, 1, 2, 1);
  append(p1, t1, 1, 3, 3, 0);
  append(p1, t1, 2, 1, 1, 0);
  // Same per-class accuracies with class 0 ten times larger.
  append(p2, t2, 0, 10, 20, 1);
  append(p2, t2, 1, 3, 3, 0);
  append(p2, t2, 2, 1, 1, 0);
  EXPECT_NEAR(evaluate(p1, t1, kTwoKnown).os_star, 75.0, 1e-12);
  EXPECT_NEAR(evaluate(p2, t2, kTwoKnown).os_star, 75.0, 1e-12);
}

}  // namespace
}  // namespace oslpp
