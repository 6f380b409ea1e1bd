#include <gtest/gtest.h>

#include "scitype/distribution.hpp"
#include "scitype/error.hpp"
#include "scitype/estimators.hpp"
#include "scitype/registry.hpp"

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

TEST(Registry, CoreHierarchyChains) {
  const Registry r = Registry::with_core_scitypes();
  std::vector<std::string> chain;
  for (const auto* s : r.scitype_chain("supervised_classifier")) chain.push_back(s->id);
  EXPECT_EQ(chain, (std::vector<std::string>{"object", "estimator", "tabular_estimator", "supervised_learner",
                                             "supervised_classifier"}));
  EXPECT_TRUE(r.is_a("transformer", "tabular_estimator"));
  EXPECT_TRUE(r.is_a("forecaster", "estimator"));
  EXPECT_FALSE(r.is_a("forecaster", "tabular_estimator"));
  EXPECT_FALSE(r.is_a("distribution", "estimator"));
  EXPECT_TRUE(r.kinds().empty());
}

TEST(Registry, ScitypeRegistrationRules) {
  Registry r = Registry::with_core_scitypes();
  EXPECT_EQ(code_of([&] { r.add_scitype({"estimator", {}, {}, "object"}); }), ErrorCode::NameCollision);
  EXPECT_EQ(code_of([&] { r.add_scitype({"clusterer", {}, {}, "nowhere"}); }), ErrorCode::InvalidArgument);
  r.add_scitype({"clusterer", {"fit", "predict"}, {}, "tabular_estimator"});
  EXPECT_TRUE(r.is_a("clusterer", "estimator"));
}

TEST(Registry, KindsDeriveDescriptorsFromTheDefaultInstance) {
  Registry r = Registry::with_core_scitypes();
  const auto& k = r.add_kind("SimpleExpSmoothing", [](const ParamMap& p) {
    auto e = std::make_unique<SimpleExpSmoothing>();
    e->set_params(p);
    return e;
  });
  EXPECT_EQ(k.scitype, "forecaster");
  EXPECT_EQ(k.default_params, (ParamMap{{"alpha", 0.5}}));
  EXPECT_EQ(k.tags["scitype"], ParamValue("forecaster"));
  EXPECT_FALSE(k.is_composite);
  EXPECT_EQ(code_of([&] { r.add_kind("SimpleExpSmoothing", k.construct); }), ErrorCode::NameCollision);
}

TEST(Registry, CreateAppliesParamsOverDefaults) {
  const Registry r = builtin_registry();
  const auto e = r.create_estimator("SimpleExpSmoothing", {{"alpha", 0.2}});
  EXPECT_EQ(e->get_params().at("alpha"), ParamValue(0.2));
  EXPECT_EQ(code_of([&] { (void)r.create("SimpleExpSmoothing", {{"beta", 1.0}}); }), ErrorCode::UnknownParameter);
  EXPECT_EQ(code_of([&] { (void)r.create("SimpleExpSmoothing", {{"alpha", 2.0}}); }), ErrorCode::DomainViolation);
  EXPECT_EQ(code_of([&] { (void)r.create("NoSuchKind"); }), ErrorCode::Unregistered);
  EXPECT_EQ(code_of([&] { (void)r.create_estimator("Normal"); }), ErrorCode::ScitypeMismatch);
}

TEST(Registry, BuiltinCatalogue) {
  const Registry r = builtin_registry();
  std::vector<std::string> names;
  for (const auto* k : r.kinds()) names.push_back(k->kind_name);
  EXPECT_EQ(names, (std::vector<std::string>{
                       "Normal", "MajorityDummyClassifier", "NearestNeighborClassifier", "MeanRegressor",
                       "LinearRegressor", "StandardScaler", "NaiveLastForecaster", "SimpleExpSmoothing",
                       "Pipeline", "Ensemble", "GridSearchTuner", "ReducedForecaster", "ScaledOLS",
                       "MajorityVoteEnsemble", "DirectLinearForecaster"}));
  for (const auto* k : r.kinds()) EXPECT_FALSE(k->is_defect) << k->kind_name;
  EXPECT_TRUE(r.kind("Pipeline").is_composite);
}

TEST(Registry, ScitypeOfAndDomainOf) {
  const Registry r = builtin_registry();
  EXPECT_EQ(r.scitype_of(Normal()).id, "distribution");
  EXPECT_EQ(r.scitype_of(StandardScaler()).id, "transformer");
  EXPECT_EQ(r.domain_of(MeanRegressor()).description(), real_line_domain().description());
}

TEST(Registry, DefectsAreOptIn) {
  Registry r = builtin_registry();
  const std::size_t before = r.kinds().size();
  register_defects(r);
  EXPECT_EQ(r.kinds().size(), before + defect_targets().size());
  for (const auto& [kind, check] : defect_targets()) EXPECT_TRUE(r.kind(kind).is_defect) << kind;
}

TEST(CanonicalFixture, DocumentedValues) {
  const Fixture f = canonical_fixture();
  EXPECT_EQ(f.X_train.names(), (std::vector<std::string>{"x0", "x1"}));
  EXPECT_EQ(f.X_train.column("x0").numeric_values(), (std::vector<double>{0.5, 1, 1.5, 2, 3, 3.5, 4, 5}));
  EXPECT_EQ(f.X_train.column("x1").numeric_values(), (std::vector<double>{2, 1, 3.5, 0.5, 2.5, 4, 1.5, 3}));
  EXPECT_EQ(f.y_class.text(), (std::vector<std::string>{"a", "a", "b", "a", "b", "b", "a", "b"}));
  EXPECT_EQ(f.y_real.numeric(), (std::vector<double>{1, 2.6, 1.9, 4.3, 4.8, 4.1, 7.2, 8.5}));
  EXPECT_EQ(f.X_test.n_rows(), 3U);
  EXPECT_EQ(f.series.values(), (std::vector<double>{3, 5, 4, 6, 8, 7, 9, 11, 10, 12}));
  EXPECT_EQ(f.fh, (ForecastingHorizon{1, 2, 3}));
}

}  // namespace
}  // namespace scitype
