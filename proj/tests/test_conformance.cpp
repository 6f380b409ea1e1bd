#include <set>

#include <gtest/gtest.h>

#include "scitype/conformance.hpp"
#include "scitype/error.hpp"
#include "scitype/registry.hpp"

namespace scitype {
namespace {

const Registry& reference() {
  static const Registry r = builtin_registry();
  return r;
}

const Registry& with_defects() {
  static const Registry r = [] {
    Registry reg = builtin_registry();
    register_defects(reg);
    return reg;
  }();
  return r;
}

TEST(Catalog, IdsAreUniqueAndStable) {
  std::set<std::string> ids;
  for (const auto& c : check_catalog()) EXPECT_TRUE(ids.insert(c.id).second) << c.id;
  for (const char* required :
       {"params_roundtrip", "unknown_param_error", "tag_presence", "persistence_roundtrip", "clone_determinism",
        "not_fitted_errors", "fitted_params_disjointness", "row_permutation_invariance",
        "column_permutation_invariance", "input_immutability", "schema_mismatch_error", "horizon_handling",
        "output_index_monotonic", "too_short_error", "resultant_scitype_law", "nested_param_addressing",
        "no_data_at_construction", "evaluation_purity", "interface_consistency"}) {
    EXPECT_TRUE(ids.contains(required)) << required;
  }
}

TEST(CheckEstimator, MajorityDummyPassesUniversalAndTabularChecks) {
  const auto report = check_estimator(reference(), "MajorityDummyClassifier");
  EXPECT_EQ(report.scitype, "supervised_classifier");
  EXPECT_TRUE(report.passed());
  for (const char* id : {"params_roundtrip", "persistence_roundtrip", "row_permutation_invariance",
                         "column_permutation_invariance", "input_immutability", "schema_mismatch_error",
                         "predictions_in_label_set"}) {
    ASSERT_NE(report.find(id), nullptr) << id;
    EXPECT_EQ(report.find(id)->status, CheckStatus::Pass) << id << ": " << report.find(id)->detail;
  }
}

TEST(CheckEstimator, ForecastersSkipTabularChecksByScitype) {
  const auto report = check_estimator(reference(), "NaiveLastForecaster");
  for (const char* id : {"row_permutation_invariance", "column_permutation_invariance", "schema_mismatch_error"}) {
    const auto* r = report.find(id);
    ASSERT_NE(r, nullptr);
    EXPECT_EQ(r->status, CheckStatus::Skip);
    EXPECT_EQ(r->skip_reason, std::optional<std::string>("scitype: forecaster"));
  }
  EXPECT_EQ(report.find("too_short_error")->status, CheckStatus::Pass);
}

TEST(CheckEstimator, AtomicKindsSkipCompositeChecksByCapability) {
  const auto report = check_estimator(reference(), "LinearRegressor");
  EXPECT_EQ(report.find("resultant_scitype_law")->skip_reason,
            std::optional<std::string>("capability: is_composite=false"));
  const auto composite = check_estimator(reference(), "Pipeline");
  EXPECT_EQ(composite.find("resultant_scitype_law")->status, CheckStatus::Pass);
  EXPECT_EQ(composite.find("nested_param_addressing")->status, CheckStatus::Pass);
}

TEST(CheckEstimator, EveryResultIsWellFormed) {
  for (const auto& report : check_all(reference())) {
    EXPECT_EQ(report.results.size(), check_catalog().size());
    for (const auto& r : report.results) {
      EXPECT_EQ(r.status == CheckStatus::Skip, r.skip_reason.has_value()) << report.kind << "/" << r.check_id;
    }
  }
}

// Completeness: the checks that run are exactly those whose level lies on
// the kind's scitype chain (minus capability exemptions).
TEST(CheckEstimator, ExecutedChecksFollowTheScitypeChain) {
  for (const auto* kind : reference().kinds()) {
    std::set<std::string> chain;
    for (const auto* s : reference().scitype_chain(kind->scitype)) chain.insert(s->id);
    const auto report = check_estimator(reference(), kind->kind_name);
    for (const auto& spec : check_catalog()) {
      const auto* r = report.find(spec.id);
      ASSERT_NE(r, nullptr);
      if (!chain.contains(spec.level)) {
        EXPECT_EQ(r->status, CheckStatus::Skip) << kind->kind_name << "/" << spec.id;
        EXPECT_EQ(r->skip_reason->rfind("scitype: ", 0), 0U);
      } else if (r->status == CheckStatus::Skip) {
        EXPECT_TRUE(spec.composite_only || spec.id == "evaluation_purity" ||
                    r->skip_reason->rfind("capability: ", 0) == 0)
            << kind->kind_name << "/" << spec.id;
      }
    }
  }
}

TEST(CheckAll, ReferenceRegistryHasNoFailures) {
  for (const auto& report : check_all(reference())) {
    for (const auto& r : report.results) {
      EXPECT_NE(r.status, CheckStatus::Fail) << report.kind << "/" << r.check_id << ": " << r.detail;
    }
  }
}

TEST(CheckAll, EachDefectFailsExactlyItsTarget) {
  std::map<std::string, std::string> targets;
  for (const auto& [kind, check] : defect_targets()) targets[kind] = check;
  ASSERT_GE(targets.size(), 4U);
  for (const auto& report : check_all(with_defects())) {
    std::vector<std::string> failed;
    for (const auto& r : report.results) {
      if (r.status == CheckStatus::Fail) failed.push_back(r.check_id);
    }
    if (targets.contains(report.kind)) {
      EXPECT_EQ(failed, std::vector<std::string>{targets[report.kind]}) << report.kind;
    } else {
      EXPECT_TRUE(failed.empty()) << report.kind;
    }
  }
}

TEST(CheckAll, EmptyRegistryIsVacuouslyFine) {
  const auto reports = check_all(Registry::with_core_scitypes());
  EXPECT_TRUE(reports.empty());
  EXPECT_EQ(reports_to_json(reports)["summary"]["passed"], true);
}

TEST(CheckEstimator, UnregisteredKind) {
  try {
    (void)check_estimator(reference(), "NoSuchKind");
    FAIL() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unregistered);
  }
}

TEST(Reports, SerializeAndRender) {
  const std::vector<ConformanceReport> reports{check_estimator(with_defects(), "LeakyRegressor")};
  const Json j = reports_to_json(reports);
  EXPECT_EQ(j["summary"]["passed"], false);
  EXPECT_EQ(j["summary"]["failed_kinds"], Json::parse(R"(["LeakyRegressor"])"));
  const Json& first = j["reports"][0];
  EXPECT_EQ(first["kind"], "LeakyRegressor");
  EXPECT_EQ(first["summary"]["fail"], 1);
  const std::string table = render_table(reports);
  EXPECT_NE(table.find("fitted_params_disjointness"), std::string::npos);
  EXPECT_NE(table.find("1 kind(s) checked, 1 with failures"), std::string::npos);
}

TEST(Reports, AreDeterministic) {
  const auto a = reports_to_json(check_all(reference()));
  const auto b = reports_to_json(check_all(reference()));
  EXPECT_EQ(a, b);
}

TEST(DataBoundNames, Vocabulary) {
  EXPECT_TRUE(is_data_bound_param_name("target"));
  EXPECT_TRUE(is_data_bound_param_name("feature_columns"));
  EXPECT_TRUE(is_data_bound_param_name("fh"));
  EXPECT_FALSE(is_data_bound_param_name("window_length"));
  EXPECT_FALSE(is_data_bound_param_name("max_horizon"));
  EXPECT_FALSE(is_data_bound_param_name("with_mean"));
}

}  // namespace
}  // namespace scitype
