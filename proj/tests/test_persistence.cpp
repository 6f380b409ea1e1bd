#include <filesystem>

#include <gtest/gtest.h>

#include "scitype/compose.hpp"
#include "scitype/distribution.hpp"
#include "scitype/error.hpp"
#include "scitype/estimators.hpp"
#include "scitype/persistence.hpp"
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

const Registry& registry() {
  static const Registry r = builtin_registry();
  return r;
}

TEST(Persistence, DocumentShape) {
  const Json doc = to_document(SimpleExpSmoothing(0.25));
  EXPECT_EQ(doc["format_version"], kFormatVersion);
  EXPECT_EQ(doc["kind"], "SimpleExpSmoothing");
  EXPECT_EQ(doc["params"]["alpha"], 0.25);
  EXPECT_EQ(doc["status"], "unfitted");
  EXPECT_TRUE(doc["fitted_params"].is_null() || doc["fitted_params"].empty());
}

TEST(Persistence, ValueObjectsRoundTrip) {
  const auto loaded = load_as<Normal>(save(Normal(1.0, 4.0)), registry());
  EXPECT_EQ(loaded->get_params(), (ParamMap{{"mu", 1.0}, {"sigma", 4.0}}));
  EXPECT_EQ(to_document(*loaded)["status"], "value");
}

TEST(Persistence, FittedEstimatorPredictsIdentically) {
  const Fixture f = canonical_fixture();
  LinearRegressor ols;
  ols.fit(f.X_train, f.y_real);
  const auto loaded = load_as<SupervisedLearner>(save(ols), registry());
  ASSERT_TRUE(loaded->is_fitted());
  EXPECT_EQ(loaded->predict(f.X_test), ols.predict(f.X_test));
  EXPECT_EQ(loaded->get_fitted_params(), ols.get_fitted_params());
}

TEST(Persistence, CompositesRoundTripWithComponents) {
  const Fixture f = canonical_fixture();
  auto pipe = registry().create_estimator("Pipeline", {{"scaler__with_mean", false}});
  auto& learner = dynamic_cast<SupervisedLearner&>(*pipe);
  learner.fit(f.X_train, f.y_real);
  const std::string text = save(*pipe);
  const auto loaded = load_as<SupervisedLearner>(text, registry());
  EXPECT_EQ(loaded->get_params(), pipe->get_params());
  EXPECT_EQ(loaded->predict(f.X_test), learner.predict(f.X_test));
  EXPECT_EQ(save(*loaded), text);
}

TEST(Persistence, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "scitype_persistence_test.json";
  save_file(MeanRegressor(), path);
  EXPECT_EQ(load_file(path, registry())->kind(), "MeanRegressor");
  std::filesystem::remove(path);
}

TEST(Persistence, UnknownKindOnLoad) {
  Json doc = to_document(MeanRegressor());
  doc["kind"] = "Vanished";
  EXPECT_EQ(code_of([&] { (void)load_document(doc, registry()); }), ErrorCode::UnknownKindOnLoad);
}

TEST(Persistence, CorruptDocumentsAreSerializationErrors) {
  EXPECT_EQ(code_of([&] { (void)load("{not json", registry()); }), ErrorCode::SerializationError);
  Json doc = to_document(MeanRegressor());
  doc["format_version"] = 99;
  EXPECT_EQ(code_of([&] { (void)load_document(doc, registry()); }), ErrorCode::SerializationError);
  doc = to_document(SimpleExpSmoothing());
  doc["params"]["alpha"] = 7.0;
  EXPECT_EQ(code_of([&] { (void)load_document(doc, registry()); }), ErrorCode::SerializationError);
  EXPECT_EQ(code_of([&] { (void)load_as<Normal>(save(MeanRegressor()), registry()); }),
            ErrorCode::SerializationError);
}

TEST(Persistence, ParamValuesMapToJson) {
  EXPECT_EQ(param_to_json(ParamValue(3)), Json(3));
  EXPECT_EQ(param_to_json(ParamValue(std::vector<std::string>{"a"})), Json::parse(R"(["a"])"));
  EXPECT_EQ(param_from_json(Json(2.5), registry()), ParamValue(2.5));
  EXPECT_EQ(param_from_json(Json::parse("[1, 2]"), registry()), ParamValue(std::vector<double>{1.0, 2.0}));
  const ParamValue ref = param_from_json(Json::parse(R"({"kind": "MeanRegressor"})"), registry());
  ASSERT_TRUE(ref.is<EstimatorRef>());
  EXPECT_EQ(ref.as<EstimatorRef>()->kind(), "MeanRegressor");
}

}  // namespace
}  // namespace scitype
