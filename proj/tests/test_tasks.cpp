#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "scitype/error.hpp"
#include "scitype/estimators.hpp"
#include "scitype/persistence.hpp"
#include "scitype/tasks.hpp"

namespace scitype {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

using Idx = std::vector<std::size_t>;

TEST(Splitter, KFoldIsContiguous) {
  const auto splits = Splitter::kfold(2).split(4);
  ASSERT_EQ(splits.size(), 2U);
  EXPECT_EQ(splits[0], (Split{Idx{2, 3}, Idx{0, 1}}));
  EXPECT_EQ(splits[1], (Split{Idx{0, 1}, Idx{2, 3}}));
}

TEST(Splitter, KFoldGivesLeadingFoldsTheRemainder) {
  const auto splits = Splitter::kfold(3).split(7);
  EXPECT_EQ(splits[0].test, (Idx{0, 1, 2}));
  EXPECT_EQ(splits[1].test, (Idx{3, 4}));
  EXPECT_EQ(splits[2].test, (Idx{5, 6}));
}

// Fisher–Yates driven by s <- 6364136223846793005 s + 1442695040888963407
// (mod 2^64), j = (s >> 33) mod (i + 1), from seed 7 over six rows gives the
// permutation [0, 3, 5, 4, 1, 2]; folds of two are cut from it in order.
TEST(Splitter, SeededKFoldOracle) {
  const auto splits = Splitter::kfold(3, 7).split(6);
  EXPECT_EQ(splits[0], (Split{Idx{1, 2, 4, 5}, Idx{0, 3}}));
  EXPECT_EQ(splits[1], (Split{Idx{0, 1, 2, 3}, Idx{4, 5}}));
  EXPECT_EQ(splits[2], (Split{Idx{0, 3, 4, 5}, Idx{1, 2}}));
}

TEST(Splitter, KFoldPartitionLaws) {
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    for (std::size_t n : {5U, 8U, 13U}) {
      const auto splits = Splitter::kfold(4, seed).split(n);
      std::multiset<std::size_t> tests;
      for (const auto& s : splits) {
        tests.insert(s.test.begin(), s.test.end());
        EXPECT_EQ(s.train.size() + s.test.size(), n);
        EXPECT_TRUE(std::is_sorted(s.test.begin(), s.test.end()));
      }
      EXPECT_EQ(tests.size(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(tests.count(i), 1U);
    }
  }
}

TEST(Splitter, HoldoutTakesTheLeadingFraction) {
  const auto splits = Splitter::holdout(0.75).split(4);
  ASSERT_EQ(splits.size(), 1U);
  EXPECT_EQ(splits[0], (Split{Idx{0, 1, 2}, Idx{3}}));
}

TEST(Splitter, TemporalSplitsNeverLeak) {
  for (std::size_t n = 2; n < 30; ++n) {
    for (double f : {0.3, 0.5, 0.9}) {
      if (static_cast<std::size_t>(f * static_cast<double>(n)) == 0) continue;
      const auto s = Splitter::temporal_holdout(f).split(n).front();
      if (s.test.empty()) continue;
      EXPECT_LT(*std::max_element(s.train.begin(), s.train.end()), *std::min_element(s.test.begin(), s.test.end()));
    }
  }
}

TEST(Splitter, TooFewSamples) {
  EXPECT_EQ(code_of([] { (void)Splitter::kfold(5).split(3); }), ErrorCode::TooFewSamples);
  EXPECT_EQ(code_of([] { (void)Splitter::holdout(0.5).split(1); }), ErrorCode::TooFewSamples);
}

TEST(Splitter, FromSpecValidates) {
  EXPECT_EQ(Splitter::from_spec("kfold", {{"k", 3}}).k(), 3);
  EXPECT_EQ(Splitter::from_spec("holdout", {{"train_fraction", 0.5}}).train_fraction(), 0.5);
  EXPECT_EQ(code_of([] { (void)Splitter::from_spec("bootstrap", {}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { (void)Splitter::from_spec("kfold", {{"train_fraction", 0.5}}); }),
            ErrorCode::UnknownParameter);
  EXPECT_EQ(code_of([] { (void)Splitter::from_spec("kfold", {{"k", 1}}); }), ErrorCode::DomainViolation);
}

Table labelled_table() {
  return Table({Column::numeric("x", {1.0, 2.0, 3.0, 4.0}),
                Column::categorical("label", {"a", "a", "b", "b"})});
}

SupervisedTask classification_task() {
  SupervisedTask t;
  t.target = "label";
  t.flavor = TaskFlavor::Classification;
  t.loss = "misclassification";
  return t;
}

// Fold 1 trains on [b, b] and tests on [a, a]; fold 2 the reverse: both
// folds misclassify every test row.
TEST(EvaluateSupervised, HandRunFoldsOracle) {
  const MajorityDummyClassifier dummy;
  const auto r = evaluate_supervised(dummy, classification_task(), labelled_table(), Splitter::kfold(2));
  EXPECT_EQ(r.per_fold_losses, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(r.mean_loss, 1.0);
  EXPECT_EQ(r.n_splits, 2U);
}

TEST(EvaluateSupervised, ExactFitHasZeroLoss) {
  const Table data({Column::numeric("x", {0.0, 1.0, 2.0, 3.0, 4.0, 5.0}),
                    Column::numeric("y", {1.0, 3.0, 5.0, 7.0, 9.0, 11.0})});
  SupervisedTask t;
  t.target = "y";
  const auto r = evaluate_supervised(LinearRegressor(), t, data, Splitter::kfold(3));
  EXPECT_NEAR(r.mean_loss, 0.0, 1e-20);
}

TEST(EvaluateSupervised, MissingTarget) {
  SupervisedTask t = classification_task();
  t.target = "nope";
  EXPECT_EQ(code_of([&] { (void)evaluate_supervised(MajorityDummyClassifier(), t, labelled_table(), Splitter::kfold(2)); }),
            ErrorCode::MissingTarget);
}

TEST(EvaluateSupervised, FlavorMustMatchTheLearner) {
  SupervisedTask t = classification_task();
  EXPECT_EQ(code_of([&] { (void)evaluate_supervised(MeanRegressor(), t, labelled_table(), Splitter::kfold(2)); }),
            ErrorCode::ScitypeMismatch);
}

TEST(EvaluateSupervised, LeavesTheEstimatorUntouched) {
  MajorityDummyClassifier dummy;
  dummy.fit(Table({Column::numeric("x", {0.0})}), LabelVector::classes(std::vector<std::string>{"z"}));
  const Json before = to_document(dummy);
  (void)evaluate_supervised(dummy, classification_task(), labelled_table(), Splitter::kfold(2));
  EXPECT_EQ(to_document(dummy), before);
}

TEST(EvaluateSupervised, ReportSerializes) {
  const auto r = evaluate_supervised(MajorityDummyClassifier(), classification_task(), labelled_table(),
                                     Splitter::kfold(2));
  const Json j = r.to_json();
  EXPECT_EQ(j["estimator"]["kind"], "MajorityDummyClassifier");
  EXPECT_EQ(j["n_splits"], 2);
  EXPECT_EQ(j["mean_loss"], 1.0);
  EXPECT_TRUE(j.contains("task"));
  EXPECT_TRUE(j.contains("per_fold_losses"));
}

// Fit on [1, 2, 3], forecast one step: 3 against the actual 4, loss 1.
TEST(EvaluateForecaster, NaiveLastOracle) {
  ForecastingTask t;
  t.fh = ForecastingHorizon{1};
  const auto r = evaluate_forecaster(NaiveLastForecaster(), t, TimeSeries({1.0, 2.0, 3.0, 4.0}), 0.75);
  EXPECT_EQ(r.mean_loss, 1.0);
  EXPECT_EQ(r.n_splits, 1U);
}

TEST(EvaluateForecaster, ConstantSeriesHasZeroLoss) {
  ForecastingTask t;
  t.fh = ForecastingHorizon{1, 2};
  const auto r = evaluate_forecaster(NaiveLastForecaster(), t, TimeSeries({5.0, 5.0, 5.0, 5.0, 5.0}), 0.6);
  EXPECT_EQ(r.mean_loss, 0.0);
}

TEST(EvaluateForecaster, HorizonBeyondData) {
  ForecastingTask t;
  t.fh = ForecastingHorizon{2};
  EXPECT_EQ(code_of([&] { (void)evaluate_forecaster(NaiveLastForecaster(), t, TimeSeries({1.0, 2.0, 3.0, 4.0}), 0.75); }),
            ErrorCode::HorizonBeyondData);
}

TEST(Tasks, ValidateLossAgainstFlavor) {
  SupervisedTask t;
  t.target = "y";
  t.loss = "misclassification";
  EXPECT_EQ(code_of([&] { t.validate(); }), ErrorCode::InvalidArgument);
  t.features = std::vector<std::string>{"y"};
  t.loss = "squared";
  EXPECT_EQ(code_of([&] { t.validate(); }), ErrorCode::InvalidArgument);
  ForecastingTask f;
  EXPECT_EQ(code_of([&] { f.validate(); }), ErrorCode::EmptyHorizon);
}

TEST(Losses, ScoreByDomain) {
  EXPECT_EQ(LossFunction::squared().mean(std::vector<double>{1.0, 2.0}, std::vector<double>{2.0, 4.0}), 2.5);
  const auto y = LabelVector::classes(std::vector<std::string>{"a", "b"});
  const auto p = LabelVector::classes(std::vector<std::string>{"a", "a"});
  EXPECT_EQ(LossFunction::misclassification().mean(y, p), 0.5);
  EXPECT_EQ(code_of([] { (void)LossFunction::squared()(ParamValue("a"), ParamValue(1.0)); }),
            ErrorCode::DomainViolation);
  EXPECT_EQ(code_of([] { (void)LossFunction::by_id("hinge"); }), ErrorCode::InvalidArgument);
}

TEST(CrossValidate, FoldLossesMatchEvaluate) {
  const Table X({Column::numeric("x", {1.0, 2.0, 3.0, 4.0})});
  const auto y = LabelVector::classes(std::vector<std::string>{"a", "a", "b", "b"});
  const auto losses =
      cross_validate(MajorityDummyClassifier(), X, y, Splitter::kfold(2), LossFunction::misclassification());
  EXPECT_EQ(losses, (std::vector<double>{1.0, 1.0}));
}

}  // namespace
}  // namespace scitype
