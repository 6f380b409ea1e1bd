#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scitype/data.hpp"
#include "scitype/estimator.hpp"

namespace scitype {

/// Runtime identity of a scientific type.
struct SciTypeDescriptor {
  std::string id;
  /// Interface points every implementation must answer.
  std::vector<std::string> required_operations;
  /// Statistical defining properties, e.g. "row_permutation_invariance".
  std::vector<std::string> statistical_properties;
  std::optional<std::string> parent;
};

/// Data a conformance run feeds to an estimator kind.
struct Fixture {
  Table X_train;
  /// Targets for classifiers and for regressors respectively.
  LabelVector y_class;
  LabelVector y_real;
  Table X_test;
  TimeSeries series;
  ForecastingHorizon fh;
};

/// Registration record of a concrete object kind.
struct KindDescriptor {
  using Constructor = std::function<std::unique_ptr<Object>(const ParamMap&)>;

  std::string kind_name;
  std::string scitype;
  /// Shallow parameters of the default instance (own values plus
  /// component references).
  ParamMap default_params;
  TagMap tags;
  /// Builds an instance from a complete shallow parameter map.
  Constructor construct;
  /// Kind-specific conformance data; the canonical fixture otherwise.
  std::function<Fixture()> test_fixture;
  bool is_composite = false;
  /// Planted-defect kinds exist to exercise the conformance checker.
  bool is_defect = false;
};

/// Append-only catalogue of scitypes and kinds. Registration is meant to
/// happen at startup; concurrent reads afterwards are safe.
class Registry {
 public:
  /// The scitype hierarchy of the toolbox (object, distribution, estimator,
  /// tabular_estimator, supervised_learner, supervised_classifier,
  /// supervised_regressor, transformer, forecaster), no kinds.
  static Registry with_core_scitypes();

  /// NameCollision for a duplicate id; InvalidArgument for an unknown or
  /// cyclic parent.
  void add_scitype(SciTypeDescriptor descriptor);

  /// Registers a kind from a constructor for its default instance. The
  /// default instance is built once to derive scitype, tags and default
  /// parameters (which therefore validate by construction).
  /// `construct` receives the merged shallow parameters of create().
  const KindDescriptor& add_kind(std::string kind_name, KindDescriptor::Constructor construct,
                                 std::function<Fixture()> test_fixture = {},
                                 bool is_defect = false);

  bool has_kind(std::string_view name) const noexcept { return find_kind(name) != nullptr; }
  const KindDescriptor* find_kind(std::string_view name) const noexcept;
  /// Unregistered when absent.
  const KindDescriptor& kind(std::string_view name) const;
  /// In registration order.
  std::vector<const KindDescriptor*> kinds() const;

  bool has_scitype(std::string_view id) const noexcept;
  /// Unregistered when absent.
  const SciTypeDescriptor& scitype(std::string_view id) const;
  /// Ancestors of `id` from the root down to `id` itself.
  std::vector<const SciTypeDescriptor*> scitype_chain(std::string_view id) const;
  bool is_a(std::string_view id, std::string_view ancestor) const;

  /// Instance of `kind` with `params` applied over its defaults. When
  /// `params` carries component references, they define the component
  /// structure and the default components are dropped.
  /// Unregistered, UnknownParameter, DomainViolation.
  std::unique_ptr<Object> create(std::string_view kind, const ParamMap& params = {}) const;
  /// create() for entity kinds; ScitypeMismatch for value objects.
  std::unique_ptr<Estimator> create_estimator(std::string_view kind,
                                              const ParamMap& params = {}) const;

  /// Most specific scitype of a registered object; Unregistered otherwise.
  const SciTypeDescriptor& scitype_of(const Object& obj) const;
  DomainDescriptor domain_of(const Object& obj) const;

 private:
  std::vector<SciTypeDescriptor> scitypes_;
  std::vector<std::unique_ptr<KindDescriptor>> kinds_;
};

/// Canonical conformance fixture: 8 rows, numeric columns x0 and x1, class
/// labels a/b, a real target, 3 test rows, the series
/// [3, 5, 4, 6, 8, 7, 9, 11, 10, 12] and fh [1, 2, 3].
Fixture canonical_fixture();

/// Registry with every reference kind, the composite kinds and the
/// contracted kinds. Planted defects are not included.
Registry builtin_registry();

/// Adds the planted-defect kinds used to validate the conformance checker.
void register_defects(Registry& registry);

/// Names of the planted-defect kinds with the single check each must fail.
std::vector<std::pair<std::string, std::string>> defect_targets();

}  // namespace scitype
