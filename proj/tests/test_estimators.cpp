#include <gtest/gtest.h>

#include "scitype/error.hpp"
#include "scitype/estimators.hpp"

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

Table one_column(std::vector<double> v) { return Table({Column::numeric("x", std::move(v))}); }

// y = 1 + 2x exactly: intercept 1, slope 2, prediction at 3 is 7.
TEST(LinearRegressor, RecoversExactLine) {
  LinearRegressor ols;
  ols.fit(one_column({0.0, 1.0, 2.0}), LabelVector::real({1.0, 3.0, 5.0}));
  EXPECT_NEAR(ols.intercept(), 1.0, 1e-12);
  ASSERT_EQ(ols.coefficients().size(), 1);
  EXPECT_NEAR(ols.coefficients()(0), 2.0, 1e-12);
  EXPECT_NEAR(ols.predict(one_column({3.0})).numeric().front(), 7.0, 1e-12);
}

TEST(LinearRegressor, WithoutInterceptFitsThroughOrigin) {
  LinearRegressor ols;
  ols.set_params({{"fit_intercept", false}});
  ols.fit(one_column({1.0, 2.0}), LabelVector::real({2.0, 4.0}));
  EXPECT_EQ(ols.intercept(), 0.0);
  EXPECT_NEAR(ols.coefficients()(0), 2.0, 1e-12);
}

TEST(LinearRegressor, RejectsCategoricalTargets) {
  LinearRegressor ols;
  EXPECT_EQ(code_of([&] {
              ols.fit(one_column({1.0, 2.0}), LabelVector::classes(std::vector<std::string>{"a", "b"}));
            }),
            ErrorCode::ScitypeMismatch);
}

// Population statistics of [1, 3]: mean 2, standard deviation 1.
TEST(StandardScaler, CentresAndScales) {
  StandardScaler s;
  const Table out = s.fit_transform(one_column({1.0, 3.0}));
  EXPECT_EQ(out.column("x").numeric_values(), (std::vector<double>{-1.0, 1.0}));
  const ParamMap f = s.get_fitted_params();
  EXPECT_EQ(f.at("mean"), ParamValue(std::vector<double>{2.0}));
  EXPECT_EQ(f.at("scale"), ParamValue(std::vector<double>{1.0}));
}

TEST(StandardScaler, ConstantColumnKeepsUnitScale) {
  StandardScaler s;
  const Table out = s.fit_transform(one_column({5.0, 5.0}));
  EXPECT_EQ(out.column("x").numeric_values(), (std::vector<double>{0.0, 0.0}));
}

TEST(StandardScaler, FlagsDisableEachStep) {
  StandardScaler s(false, false);
  EXPECT_EQ(s.fit_transform(one_column({1.0, 3.0})).column("x").numeric_values(),
            (std::vector<double>{1.0, 3.0}));
}

TEST(MajorityDummyClassifier, PredictsTheMostFrequentLabel) {
  MajorityDummyClassifier d;
  d.fit(one_column({0.0, 0.0, 0.0}), LabelVector::classes(std::vector<double>{1.0, 1.0, 2.0}));
  EXPECT_EQ(d.get_fitted_params().at("majority_class"), ParamValue(1.0));
  EXPECT_EQ(d.predict(one_column({9.0, -9.0})), LabelVector::classes(std::vector<double>{1.0, 1.0}));
}

TEST(MajorityDummyClassifier, TiesGoToTheCanonicallySmallestLabel) {
  MajorityDummyClassifier d;
  d.fit(one_column({0.0, 0.0}), LabelVector::classes(std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(d.get_fitted_params().at("majority_class"), ParamValue("a"));
}

TEST(NearestNeighborClassifier, OneNeighbourCopiesTheClosestLabel) {
  NearestNeighborClassifier knn(1);
  knn.fit(one_column({0.0, 10.0}), LabelVector::classes(std::vector<std::string>{"lo", "hi"}));
  EXPECT_EQ(knn.predict(one_column({1.0, 9.0})),
            LabelVector::classes(std::vector<std::string>{"lo", "hi"}));
}

TEST(NearestNeighborClassifier, ThreeNeighboursVote) {
  NearestNeighborClassifier knn(3);
  knn.fit(one_column({0.0, 1.0, 2.0, 10.0}), LabelVector::classes(std::vector<std::string>{"a", "b", "a", "b"}));
  EXPECT_EQ(knn.predict(one_column({1.0})).text().front(), "a");
}

TEST(NearestNeighborClassifier, KMustBePositive) {
  EXPECT_EQ(code_of([] { NearestNeighborClassifier(0); }), ErrorCode::DomainViolation);
}

TEST(MeanRegressor, PredictsTheTrainingMean) {
  MeanRegressor m;
  m.fit(one_column({0.0, 0.0, 0.0}), LabelVector::real({1.0, 2.0, 6.0}));
  EXPECT_EQ(m.predict(one_column({5.0})).numeric(), (std::vector<double>{3.0}));
}

TEST(NaiveLastForecaster, RepeatsTheLastObservation) {
  NaiveLastForecaster f;
  f.fit(TimeSeries({1.0, 2.0, 3.0}));
  const TimeSeries p = f.predict({1, 3});
  EXPECT_EQ(p.values(), (std::vector<double>{3.0, 3.0}));
  EXPECT_EQ(p.index(), (std::vector<std::int64_t>{3, 5}));
}

// Level recursion with alpha 0.5 on [2, 4]: l0 = 2, l1 = 0.5*4 + 0.5*2 = 3.
TEST(SimpleExpSmoothing, LevelRecursionOracle) {
  SimpleExpSmoothing ses(0.5);
  ses.fit(TimeSeries({2.0, 4.0}));
  EXPECT_EQ(ses.get_fitted_params().at("level"), ParamValue(3.0));
  EXPECT_EQ(ses.predict({1, 2}).values(), (std::vector<double>{3.0, 3.0}));
}

TEST(SimpleExpSmoothing, AlphaMustLieInUnitInterval) {
  EXPECT_EQ(code_of([] { SimpleExpSmoothing(0.0); }), ErrorCode::DomainViolation);
  EXPECT_EQ(code_of([] { SimpleExpSmoothing(1.5); }), ErrorCode::DomainViolation);
}

TEST(Lifecycle, PredictBeforeFitRaisesNotFitted) {
  LinearRegressor ols;
  EXPECT_EQ(code_of([&] { (void)ols.predict(one_column({1.0})); }), ErrorCode::NotFitted);
  EXPECT_EQ(code_of([&] { (void)ols.get_fitted_params(); }), ErrorCode::NotFitted);
}

TEST(Lifecycle, SetParamsResetsToUnfitted) {
  LinearRegressor ols;
  ols.fit(one_column({0.0, 1.0}), LabelVector::real({0.0, 1.0}));
  ASSERT_TRUE(ols.is_fitted());
  ols.set_params({{"ridge", 0.5}});
  EXPECT_FALSE(ols.is_fitted());
}

TEST(Lifecycle, RejectedSetParamsIsAtomic) {
  LinearRegressor ols;
  EXPECT_EQ(code_of([&] { ols.set_params({{"ridge", 0.5}, {"bogus", 1}}); }), ErrorCode::UnknownParameter);
  EXPECT_EQ(code_of([&] { ols.set_params({{"ridge", -1.0}}); }), ErrorCode::DomainViolation);
  EXPECT_EQ(ols.get_params().at("ridge"), ParamValue(0.0));
}

TEST(Lifecycle, CloneUnfittedKeepsParamsOnly) {
  NearestNeighborClassifier knn(1);
  knn.fit(one_column({0.0}), LabelVector::classes(std::vector<std::string>{"a"}));
  const auto c = knn.clone_unfitted();
  EXPECT_FALSE(c->is_fitted());
  EXPECT_EQ(c->get_params(), knn.get_params());
}

TEST(Validation, LengthAndEmptinessAreChecked) {
  MeanRegressor m;
  EXPECT_EQ(code_of([&] { m.fit(one_column({1.0, 2.0}), LabelVector::real({1.0})); }), ErrorCode::LengthMismatch);
  EXPECT_EQ(code_of([&] { m.fit(one_column({}), LabelVector::real({})); }), ErrorCode::EmptyTrainingSet);
}

TEST(Validation, PredictChecksTheSchema) {
  MeanRegressor m;
  m.fit(one_column({1.0, 2.0}), LabelVector::real({1.0, 2.0}));
  EXPECT_EQ(code_of([&] { (void)m.predict(Table({Column::numeric("z", {1.0})})); }), ErrorCode::SchemaMismatch);
}

TEST(Validation, ForecastersCheckHorizonAndLength) {
  NaiveLastForecaster f;
  EXPECT_EQ(code_of([&] { f.fit(TimeSeries(std::vector<double>{})); }), ErrorCode::TooShort);
  f.fit(TimeSeries({1.0}));
  EXPECT_EQ(code_of([&] { (void)f.predict(ForecastingHorizon{}); }), ErrorCode::EmptyHorizon);
}

TEST(FittedParams, RecordTheTrainingSchema) {
  MeanRegressor m;
  m.fit(one_column({1.0}), LabelVector::real({4.0}));
  const ParamMap f = m.get_fitted_params();
  EXPECT_EQ(f.at("feature_names"), ParamValue(std::vector<std::string>{"x"}));
  EXPECT_EQ(f.at("mean"), ParamValue(4.0));
}

}  // namespace
}  // namespace scitype
