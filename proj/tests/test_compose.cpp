#include <numeric>

#include <gtest/gtest.h>

#include "scitype/compose.hpp"
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

std::unique_ptr<Pipeline> scaler_then(std::unique_ptr<SupervisedLearner> final, bool with_mean = true,
                                      bool with_scale = true) {
  std::vector<Named<Transformer>> steps;
  steps.emplace_back("scaler", std::make_unique<StandardScaler>(with_mean, with_scale));
  return std::make_unique<Pipeline>(std::move(steps), Named<SupervisedLearner>{"learner", std::move(final)});
}

// ---------------------------------------------------------------- Pipeline

// x = [1, 3, 5, 7] has mean 4 and population deviation sqrt(5); y = 2x + 1
// stays exactly linear after scaling, so the prediction at x = 9 is 19.
TEST(Pipeline, MatchesTheManualChain) {
  const Table X = one_column({1.0, 3.0, 5.0, 7.0});
  const LabelVector y = LabelVector::real({3.0, 7.0, 11.0, 15.0});
  const Table X_new = one_column({9.0});

  auto pipe = scaler_then(std::make_unique<LinearRegressor>());
  pipe->fit(X, y);

  StandardScaler scaler;
  LinearRegressor ols;
  ols.fit(scaler.fit_transform(X), y);
  const LabelVector manual = ols.predict(scaler.transform(X_new));

  EXPECT_EQ(pipe->predict(X_new), manual);
  EXPECT_NEAR(manual.numeric().front(), 19.0, 1e-12);
}

TEST(Pipeline, MeanRegressorIgnoresScaling) {
  auto pipe = scaler_then(std::make_unique<MeanRegressor>());
  pipe->fit(one_column({1.0, 100.0}), LabelVector::real({2.0, 4.0}));
  EXPECT_EQ(pipe->predict(one_column({-5.0})).numeric(), (std::vector<double>{3.0}));
}

TEST(Pipeline, IdentityStepEqualsBareLearner) {
  const Fixture f = canonical_fixture();
  auto pipe = scaler_then(std::make_unique<LinearRegressor>(), false, false);
  pipe->fit(f.X_train, f.y_real);
  LinearRegressor ols;
  ols.fit(f.X_train, f.y_real);
  EXPECT_EQ(pipe->predict(f.X_test), ols.predict(f.X_test));
}

TEST(Pipeline, ZeroStepsEqualsFinal) {
  const Fixture f = canonical_fixture();
  Pipeline pipe({}, {"learner", std::make_unique<LinearRegressor>()});
  pipe.fit(f.X_train, f.y_real);
  LinearRegressor ols;
  ols.fit(f.X_train, f.y_real);
  EXPECT_EQ(pipe.predict(f.X_test), ols.predict(f.X_test));
}

TEST(Pipeline, TakesTheFinalScitype) {
  auto reg = scaler_then(std::make_unique<LinearRegressor>());
  auto cls = scaler_then(std::make_unique<NearestNeighborClassifier>());
  EXPECT_EQ(reg->scitype(), "supervised_regressor");
  EXPECT_EQ(cls->scitype(), "supervised_classifier");
  EXPECT_EQ(cls->get_tags()["is_composite"], ParamValue(true));
}

TEST(Pipeline, NestedParamsAddressComponents) {
  auto pipe = scaler_then(std::make_unique<LinearRegressor>());
  const ParamMap deep = pipe->get_params(true);
  EXPECT_EQ(deep.at("scaler__with_mean"), ParamValue(true));
  EXPECT_EQ(deep.at("learner__ridge"), ParamValue(0.0));
  pipe->set_params({{"learner__ridge", 0.5}});
  EXPECT_EQ(pipe->component("learner").get_params().at("ridge"), ParamValue(0.5));
  EXPECT_EQ(code_of([&] { pipe->set_params({{"learner__nope", 1}}); }), ErrorCode::UnknownParameter);
  EXPECT_EQ(code_of([&] { pipe->set_params({{"other__ridge", 1.0}}); }), ErrorCode::UnknownParameter);
}

TEST(Pipeline, StepNamesMustBeUnique) {
  std::vector<Named<Transformer>> steps;
  steps.emplace_back("learner", std::make_unique<StandardScaler>());
  EXPECT_EQ(code_of([&] {
              Pipeline(std::move(steps), {"learner", std::make_unique<LinearRegressor>()});
            }),
            ErrorCode::NameCollision);
}

TEST(Pipeline, ComponentErrorsNameTheStep) {
  auto pipe = scaler_then(std::make_unique<LinearRegressor>());
  try {
    pipe->set_params({{"learner__ridge", -1.0}});
    FAIL() << "no error raised";
  } catch (const Error& e) {
    ASSERT_FALSE(e.context().empty());
    EXPECT_EQ(e.code(), ErrorCode::DomainViolation);
    EXPECT_EQ(e.context().front(), "learner");
  }
}

// ---------------------------------------------------------------- Ensemble

TEST(Ensemble, IdenticalMembersEqualOneMember) {
  const Fixture f = canonical_fixture();
  std::vector<Named<SupervisedLearner>> members;
  members.emplace_back("a", std::make_unique<MeanRegressor>());
  members.emplace_back("b", std::make_unique<MeanRegressor>());
  Ensemble ens(std::move(members), "mean");
  ens.fit(f.X_train, f.y_real);
  MeanRegressor m;
  m.fit(f.X_train, f.y_real);
  EXPECT_EQ(ens.predict(f.X_test), m.predict(f.X_test));
}

TEST(Ensemble, MeanAggregatesMemberPredictions) {
  const Fixture f = canonical_fixture();
  std::vector<Named<SupervisedLearner>> members;
  members.emplace_back("mean", std::make_unique<MeanRegressor>());
  members.emplace_back("ols", std::make_unique<LinearRegressor>());
  members.emplace_back("scaled", scaler_then(std::make_unique<LinearRegressor>()));
  Ensemble ens(std::move(members), "mean");
  ens.fit(f.X_train, f.y_real);
  const auto got = ens.predict(f.X_test).numeric();

  MeanRegressor m;
  LinearRegressor o;
  auto s = scaler_then(std::make_unique<LinearRegressor>());
  m.fit(f.X_train, f.y_real);
  o.fit(f.X_train, f.y_real);
  s->fit(f.X_train, f.y_real);
  const auto pm = m.predict(f.X_test).numeric();
  const auto po = o.predict(f.X_test).numeric();
  const auto ps = s->predict(f.X_test).numeric();
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], (pm[i] + po[i] + ps[i]) / 3.0, 1e-12);
}

// Majority class is "a" for the dummy while the nearest neighbour of x = 2
// is labelled "b": one vote each, and the tie goes to "a" either way round.
TEST(Ensemble, VoteTiesGoToTheCanonicallySmallestLabel) {
  for (const auto& labels : {std::vector<std::string>{"a", "a", "b"}, std::vector<std::string>{"b", "b", "a"}}) {
    std::vector<Named<SupervisedLearner>> members;
    members.emplace_back("dummy", std::make_unique<MajorityDummyClassifier>());
    members.emplace_back("knn", std::make_unique<NearestNeighborClassifier>(1));
    Ensemble ens(std::move(members), "majority_vote");
    ens.fit(one_column({0.0, 1.0, 2.0}), LabelVector::classes(labels));
    EXPECT_EQ(ens.predict(one_column({2.0})).text().front(), "a");
  }
}

TEST(Ensemble, ConstructionRules) {
  EXPECT_EQ(code_of([] { Ensemble({}, "mean"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] {
              std::vector<Named<SupervisedLearner>> m;
              m.emplace_back("a", std::make_unique<MeanRegressor>());
              Ensemble(std::move(m), "majority_vote");
            }),
            ErrorCode::AggregatorMismatch);
  EXPECT_EQ(code_of([] {
              std::vector<Named<SupervisedLearner>> m;
              m.emplace_back("a", std::make_unique<MeanRegressor>());
              m.emplace_back("b", std::make_unique<MajorityDummyClassifier>());
              Ensemble(std::move(m), "mean");
            }),
            ErrorCode::ScitypeMismatch);
}

// ---------------------------------------------------------------- GridSearchTuner

TEST(GridSearchTuner, SingletonGridBehavesLikeSetParamsAndFit) {
  const Fixture f = canonical_fixture();
  GridSearchTuner t(std::make_unique<NearestNeighborClassifier>(), {{"k", {ParamValue(1)}}}, Splitter::kfold(2));
  t.fit(f.X_train, f.y_class);
  EXPECT_EQ(t.best_params(), (ParamMap{{"k", 1}}));
  NearestNeighborClassifier knn(1);
  knn.fit(f.X_train, f.y_class);
  EXPECT_EQ(t.predict(f.X_test), knn.predict(f.X_test));
}

// Six rows, k in {1, 3}, two folds: the tuner's choice must equal a brute
// force over every grid point and fold on the canonical row order.
TEST(GridSearchTuner, ExhaustiveOracle) {
  const Table X({Column::numeric("x0", {0.0, 1.0, 2.0, 5.0, 6.0, 7.0}),
                 Column::numeric("x1", {1.0, 0.0, 1.0, 0.0, 1.0, 0.0})});
  const LabelVector y = LabelVector::classes(std::vector<std::string>{"a", "b", "a", "b", "b", "a"});
  GridSearchTuner t(std::make_unique<NearestNeighborClassifier>(), {{"k", {ParamValue(1), ParamValue(3)}}},
                    Splitter::kfold(2), "misclassification");
  t.fit(X, y);

  const auto order = canonical_row_order(X, &y);
  const Table Xc = X.take_rows(order);
  const LabelVector yc = y.take(order);
  std::vector<double> means;
  for (std::int64_t k : {1, 3}) {
    const auto losses = cross_validate(NearestNeighborClassifier(k), Xc, yc, Splitter::kfold(2),
                                       LossFunction::misclassification());
    means.push_back(std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(losses.size()));
  }
  const std::size_t best = means[1] < means[0] ? 1 : 0;
  EXPECT_EQ(t.best_index(), best);
  ASSERT_EQ(t.cv_results().size(), 2U);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(t.cv_results()[i].mean_loss, means[i], 1e-12);
}

TEST(GridSearchTuner, GridIteratesFirstKeySlowest) {
  Pipeline pipe({}, {"learner", std::make_unique<LinearRegressor>()});
  GridSearchTuner t(std::make_unique<LinearRegressor>(),
                    {{"fit_intercept", {ParamValue(true), ParamValue(false)}},
                     {"ridge", {ParamValue(0.0), ParamValue(1.0), ParamValue(2.0)}}});
  const auto points = t.grid_points();
  ASSERT_EQ(points.size(), 6U);
  EXPECT_EQ(points[0], (ParamMap{{"fit_intercept", true}, {"ridge", 0.0}}));
  EXPECT_EQ(points[1], (ParamMap{{"fit_intercept", true}, {"ridge", 1.0}}));
  EXPECT_EQ(points[3], (ParamMap{{"fit_intercept", false}, {"ridge", 0.0}}));
}

TEST(GridSearchTuner, TiesGoToTheFirstPoint) {
  const Fixture f = canonical_fixture();
  GridSearchTuner t(std::make_unique<MeanRegressor>(), {}, Splitter::kfold(2));
  EXPECT_EQ(code_of([&] { t.fit(f.X_train, f.y_real); }), ErrorCode::EmptyGrid);
  auto pipe = scaler_then(std::make_unique<MeanRegressor>());
  GridSearchTuner u(std::move(pipe), {{"scaler__with_mean", {ParamValue(true), ParamValue(false)}}},
                    Splitter::kfold(2));
  u.fit(f.X_train, f.y_real);
  EXPECT_EQ(u.cv_results()[0].mean_loss, u.cv_results()[1].mean_loss);
  EXPECT_EQ(u.best_index(), 0U);
}

TEST(GridSearchTuner, GridKeysMustBeInnerParams) {
  EXPECT_EQ(code_of([] { GridSearchTuner(std::make_unique<MeanRegressor>(), {{"k", {ParamValue(1)}}}); }),
            ErrorCode::UnknownParameter);
}

TEST(GridSearchTuner, FittedParamsReportTheSearch) {
  const Fixture f = canonical_fixture();
  GridSearchTuner t(std::make_unique<NearestNeighborClassifier>(), {{"k", {ParamValue(1), ParamValue(3)}}},
                    Splitter::kfold(2));
  t.fit(f.X_train, f.y_class);
  const ParamMap fp = t.get_fitted_params();
  EXPECT_TRUE(fp.contains("best_params"));
  EXPECT_TRUE(fp.contains("best_score"));
  EXPECT_TRUE(fp.contains("cv_mean_losses"));
  EXPECT_EQ(fp.at("best_score"), ParamValue(t.cv_results()[t.best_index()].mean_loss));
  EXPECT_EQ(t.scitype(), "supervised_classifier");
}

TEST(GridSearchTuner, GridEntriesRoundTripThroughText) {
  const std::vector<ParamValue> values{ParamValue(1), ParamValue(3)};
  const std::string text = GridSearchTuner::encode_grid_entry("k", values);
  EXPECT_EQ(text, "k=[1,3]");
  const auto [key, decoded] = GridSearchTuner::decode_grid_entry(text);
  EXPECT_EQ(key, "k");
  EXPECT_EQ(decoded, values);
  EXPECT_EQ(code_of([] { (void)GridSearchTuner::decode_grid_entry("k"); }), ErrorCode::DomainViolation);
}

// ---------------------------------------------------------------- ReducedForecaster

// y = [1, 2, 3, 4], window 2: the windows predict targets 3 and 4, whose
// mean 3.5 is the forecast at every offset.
TEST(ReducedForecaster, MeanRegressorOracle) {
  ReducedForecaster f(std::make_unique<MeanRegressor>(), 2);
  f.fit(TimeSeries({1.0, 2.0, 3.0, 4.0}));
  EXPECT_EQ(f.predict({1, 2, 5}).values(), (std::vector<double>{3.5, 3.5, 3.5}));
}

TEST(ReducedForecaster, SingleWindowPredictsItsTarget) {
  ReducedForecaster f(std::make_unique<MeanRegressor>(), 3);
  f.fit(TimeSeries({1.0, 2.0, 3.0, 8.0}));
  EXPECT_EQ(f.predict({1}).values(), (std::vector<double>{8.0}));
}

TEST(ReducedForecaster, TooShort) {
  ReducedForecaster f(std::make_unique<MeanRegressor>(), 3);
  EXPECT_EQ(code_of([&] { f.fit(TimeSeries({1.0, 2.0, 3.0})); }), ErrorCode::TooShort);
  EXPECT_EQ(f.min_train_length(), 4U);
}

TEST(ReducedForecaster, TabularizeBuildsLagColumns) {
  const auto [X, y] = ReducedForecaster::tabularize({1.0, 2.0, 3.0, 4.0, 5.0}, 2, 1);
  EXPECT_EQ(X.names(), (std::vector<std::string>{"lag_1", "lag_2"}));
  EXPECT_EQ(X.column("lag_1").numeric_values(), (std::vector<double>{2.0, 3.0, 4.0}));
  EXPECT_EQ(X.column("lag_2").numeric_values(), (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(y.numeric(), (std::vector<double>{3.0, 4.0, 5.0}));
  const auto [X2, y2] = ReducedForecaster::tabularize({1.0, 2.0, 3.0, 4.0, 5.0}, 2, 2);
  EXPECT_EQ(X2.column("lag_1").numeric_values(), (std::vector<double>{2.0, 3.0}));
  EXPECT_EQ(y2.numeric(), (std::vector<double>{4.0, 5.0}));
}

// A linear trend is reproduced exactly by OLS on lags, recursively and
// directly.
TEST(ReducedForecaster, LinearTrendExtrapolates) {
  const TimeSeries y({1.0, 3.0, 5.0, 7.0, 9.0, 11.0, 13.0});
  ReducedForecaster rec(std::make_unique<LinearRegressor>(), 1, "recursive");
  ReducedForecaster dir(std::make_unique<LinearRegressor>(), 1, "direct", 3);
  rec.fit(y);
  dir.fit(y);
  const auto r = rec.predict({1, 2, 3}).values();
  const auto d = dir.predict({1, 2, 3}).values();
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(r[i], 15.0 + 2.0 * static_cast<double>(i), 1e-9);
    EXPECT_NEAR(d[i], 15.0 + 2.0 * static_cast<double>(i), 1e-9);
  }
  EXPECT_EQ(code_of([&] { (void)dir.predict({4}); }), ErrorCode::HorizonBeyondData);
}

TEST(ReducedForecaster, NeedsARegressor) {
  EXPECT_EQ(code_of([] { ReducedForecaster(std::make_unique<MajorityDummyClassifier>(), 2); }),
            ErrorCode::ScitypeMismatch);
  EXPECT_EQ(ReducedForecaster(std::make_unique<MeanRegressor>()).scitype(), "forecaster");
}

// ---------------------------------------------------------------- contract

TEST(Contract, ContractedKindMatchesTheExplicitComposite) {
  const Fixture f = canonical_fixture();
  Registry r = builtin_registry();
  auto blueprint = scaler_then(std::make_unique<LinearRegressor>());
  const auto& k = contract(r, "ScaledRidge", *blueprint, {{"learner__ridge", 0.25}});
  EXPECT_FALSE(k.is_composite);
  EXPECT_EQ(k.scitype, "supervised_regressor");

  auto contracted = r.create_estimator("ScaledRidge", {{"with_mean", false}});
  EXPECT_EQ(contracted->get_params(true).keys(),
            (std::vector<std::string>{"with_mean", "with_scale", "fit_intercept"}));
  auto& learner = dynamic_cast<SupervisedLearner&>(*contracted);
  learner.fit(f.X_train, f.y_real);

  blueprint->set_params({{"learner__ridge", 0.25}, {"scaler__with_mean", false}});
  blueprint->fit(f.X_train, f.y_real);
  EXPECT_EQ(learner.predict(f.X_test), blueprint->predict(f.X_test));
  EXPECT_EQ(code_of([&] { contracted->set_params({{"ridge", 1.0}}); }), ErrorCode::UnknownParameter);
}

TEST(Contract, ZeroFixedParamsIsAliasing) {
  Registry r = builtin_registry();
  auto blueprint = scaler_then(std::make_unique<LinearRegressor>());
  contract(r, "AliasPipe", *blueprint, {});
  EXPECT_EQ(r.create_estimator("AliasPipe")->get_params(true).size(), 4U);
}

TEST(Contract, Errors) {
  Registry r = builtin_registry();
  const auto blueprint = scaler_then(std::make_unique<LinearRegressor>());
  EXPECT_EQ(code_of([&] { contract(r, "ScaledOLS", *blueprint, {}); }), ErrorCode::NameCollision);
  std::vector<Named<SupervisedLearner>> m;
  m.emplace_back("a", std::make_unique<LinearRegressor>());
  m.emplace_back("b", std::make_unique<LinearRegressor>());
  const Ensemble twins(std::move(m), "mean");
  EXPECT_EQ(code_of([&] { contract(r, "Twins", twins, {}); }), ErrorCode::AmbiguousParamFlattening);
  EXPECT_FALSE(r.has_kind("Twins"));
}

}  // namespace
}  // namespace scitype
