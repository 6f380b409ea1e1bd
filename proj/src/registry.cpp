#include "scitype/registry.hpp"

#include <algorithm>
#include <cctype>

#include "scitype/compose.hpp"
#include "scitype/distribution.hpp"
#include "scitype/estimators.hpp"

namespace scitype {

namespace {

bool is_valid_kind_name(std::string_view name) {
  if (name.empty() || std::isalpha(static_cast<unsigned char>(name.front())) == 0) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

}  // namespace

Registry Registry::with_core_scitypes() {
  Registry r;
  r.add_scitype({"object", {"get_params", "get_tags", "scitype_of", "domain_of", "save", "load"}, {}, {}});
  r.add_scitype({"distribution",
                 {"pdf", "cdf"},
                 {"cdf_monotone", "pdf_nonnegative", "pdf_normalized"},
                 "object"});
  r.add_scitype({"estimator",
                 {"set_params", "get_fitted_params", "clone_unfitted", "fit"},
                 {"clone_determinism", "evaluation_purity"},
                 "object"});
  r.add_scitype({"tabular_estimator",
                 {},
                 {"row_permutation_invariance", "column_permutation_invariance", "input_immutability"},
                 "estimator"});
  r.add_scitype({"supervised_learner", {"fit", "predict"}, {}, "tabular_estimator"});
  r.add_scitype({"supervised_classifier", {}, {"predictions_in_label_set"}, "supervised_learner"});
  r.add_scitype({"supervised_regressor", {}, {"predictions_finite"}, "supervised_learner"});
  r.add_scitype({"transformer", {"fit", "transform", "fit_transform"}, {}, "tabular_estimator"});
  r.add_scitype({"forecaster", {"fit", "predict"}, {"output_index_monotonic"}, "estimator"});
  return r;
}

void Registry::add_scitype(SciTypeDescriptor descriptor) {
  if (has_scitype(descriptor.id)) {
    throw Error(ErrorCode::NameCollision, "scitype '" + descriptor.id + "' is already registered");
  }
  // A parent must already exist, so parent chains can never form a cycle.
  if (descriptor.parent && !has_scitype(*descriptor.parent)) {
    throw Error(ErrorCode::InvalidArgument, "scitype '" + descriptor.id + "' names unknown parent '" +
                                                *descriptor.parent + "'");
  }
  scitypes_.push_back(std::move(descriptor));
}

const KindDescriptor& Registry::add_kind(std::string kind_name, KindDescriptor::Constructor construct,
                                         std::function<Fixture()> test_fixture, bool is_defect) {
  if (!is_valid_kind_name(kind_name)) {
    throw Error(ErrorCode::InvalidArgument, "invalid kind name '" + kind_name + "'");
  }
  if (has_kind(kind_name)) {
    throw Error(ErrorCode::NameCollision, "kind '" + kind_name + "' is already registered");
  }
  auto instance = construct(ParamMap{});
  if (instance == nullptr) throw Error(ErrorCode::InvalidArgument, kind_name + " constructor returned null");
  if (instance->kind() != kind_name) {
    throw Error(ErrorCode::InvalidArgument,
                "constructor of '" + kind_name + "' builds '" + instance->kind() + "'");
  }
  auto d = std::make_unique<KindDescriptor>();
  d->kind_name = std::move(kind_name);
  d->scitype = instance->scitype();
  if (!has_scitype(d->scitype)) {
    throw Error(ErrorCode::Unregistered, "scitype '" + d->scitype + "' of " + d->kind_name);
  }
  d->default_params = instance->get_params(false);
  d->tags = instance->get_tags();
  d->construct = std::move(construct);
  d->test_fixture = test_fixture ? std::move(test_fixture) : canonical_fixture;
  if (const auto* e = dynamic_cast<const Estimator*>(instance.get())) d->is_composite = e->is_composite();
  d->is_defect = is_defect;
  kinds_.push_back(std::move(d));
  return *kinds_.back();
}

const KindDescriptor* Registry::find_kind(std::string_view name) const noexcept {
  for (const auto& k : kinds_) {
    if (k->kind_name == name) return k.get();
  }
  return nullptr;
}

const KindDescriptor& Registry::kind(std::string_view name) const {
  if (const auto* k = find_kind(name)) return *k;
  throw Error(ErrorCode::Unregistered, "unregistered kind '" + std::string(name) + "'");
}

std::vector<const KindDescriptor*> Registry::kinds() const {
  std::vector<const KindDescriptor*> out;
  for (const auto& k : kinds_) out.push_back(k.get());
  return out;
}

bool Registry::has_scitype(std::string_view id) const noexcept {
  return std::any_of(scitypes_.begin(), scitypes_.end(), [&](const auto& s) { return s.id == id; });
}

const SciTypeDescriptor& Registry::scitype(std::string_view id) const {
  for (const auto& s : scitypes_) {
    if (s.id == id) return s;
  }
  throw Error(ErrorCode::Unregistered, "unregistered scitype '" + std::string(id) + "'");
}

std::vector<const SciTypeDescriptor*> Registry::scitype_chain(std::string_view id) const {
  std::vector<const SciTypeDescriptor*> chain;
  const SciTypeDescriptor* s = &scitype(id);
  while (true) {
    chain.push_back(s);
    if (!s->parent) break;
    s = &scitype(*s->parent);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

bool Registry::is_a(std::string_view id, std::string_view ancestor) const {
  for (const auto* s : scitype_chain(id)) {
    if (s->id == ancestor) return true;
  }
  return false;
}

std::unique_ptr<Object> Registry::create(std::string_view kind_name, const ParamMap& params) const {
  return kind(kind_name).construct(params);
}

std::unique_ptr<Estimator> Registry::create_estimator(std::string_view kind_name,
                                                      const ParamMap& params) const {
  auto obj = create(kind_name, params);
  if (auto* e = dynamic_cast<Estimator*>(obj.get())) {
    obj.release();
    return std::unique_ptr<Estimator>(e);
  }
  throw Error(ErrorCode::ScitypeMismatch, std::string(kind_name) + " is not an estimator");
}

const SciTypeDescriptor& Registry::scitype_of(const Object& obj) const {
  if (!has_kind(obj.kind())) {
    throw Error(ErrorCode::Unregistered, "unregistered kind '" + obj.kind() + "'");
  }
  return scitype(obj.scitype());
}

DomainDescriptor Registry::domain_of(const Object& obj) const {
  if (!has_kind(obj.kind())) {
    throw Error(ErrorCode::Unregistered, "unregistered kind '" + obj.kind() + "'");
  }
  return obj.domain();
}

// ---------------------------------------------------------------- built-in kinds

Fixture canonical_fixture() {
  Fixture f;
  f.X_train = Table({Column::numeric("x0", {0.5, 1.0, 1.5, 2.0, 3.0, 3.5, 4.0, 5.0}),
                     Column::numeric("x1", {2.0, 1.0, 3.5, 0.5, 2.5, 4.0, 1.5, 3.0})});
  f.y_class = LabelVector::classes(std::vector<std::string>{"a", "a", "b", "a", "b", "b", "a", "b"});
  f.y_real = LabelVector::real({1.0, 2.6, 1.9, 4.3, 4.8, 4.1, 7.2, 8.5});
  f.X_test = Table({Column::numeric("x0", {0.8, 2.7, 4.6}), Column::numeric("x1", {1.8, 3.1, 0.9})});
  f.series = TimeSeries(std::vector<double>{3, 5, 4, 6, 8, 7, 9, 11, 10, 12});
  f.fh = ForecastingHorizon{1, 2, 3};
  return f;
}

namespace {

template <class T>
KindDescriptor::Constructor atomic() {
  return [](const ParamMap& params) -> std::unique_ptr<Object> {
    auto e = std::make_unique<T>();
    if (!params.empty()) e->set_params(params);
    return e;
  };
}

/// Builds the default composite and applies `params`, unless the component
/// references in `params` describe a different structure, in which case
/// `from_params` builds it from scratch.
KindDescriptor::Constructor composite(std::function<std::unique_ptr<Estimator>()> make_default,
                                      std::function<std::unique_ptr<Estimator>(const ParamMap&)> from_params) {
  return [make_default, from_params](const ParamMap& params) -> std::unique_ptr<Object> {
    auto e = make_default();
    std::vector<std::string> refs;
    for (const auto& [k, v] : params) {
      if (v.is<EstimatorRef>()) refs.push_back(k);
    }
    if (!refs.empty() && refs != e->component_names()) return from_params(params);
    if (!params.empty()) e->set_params(params);
    return e;
  };
}

std::unique_ptr<Pipeline> default_pipeline() {
  std::vector<Named<Transformer>> steps;
  steps.emplace_back("scaler", std::make_unique<StandardScaler>());
  return std::make_unique<Pipeline>(std::move(steps),
                                    Named<SupervisedLearner>{"learner", std::make_unique<LinearRegressor>()});
}

std::unique_ptr<Ensemble> default_ensemble() {
  std::vector<Named<SupervisedLearner>> members;
  members.emplace_back("mean", std::make_unique<MeanRegressor>());
  members.emplace_back("linear", std::make_unique<LinearRegressor>());
  return std::make_unique<Ensemble>(std::move(members), "mean");
}

std::unique_ptr<Ensemble> voting_ensemble() {
  std::vector<Named<SupervisedLearner>> members;
  members.emplace_back("knn", std::make_unique<NearestNeighborClassifier>());
  members.emplace_back("dummy", std::make_unique<MajorityDummyClassifier>());
  return std::make_unique<Ensemble>(std::move(members), "majority_vote");
}

std::unique_ptr<GridSearchTuner> default_tuner() {
  return std::make_unique<GridSearchTuner>(std::make_unique<NearestNeighborClassifier>(),
                                           ParamGrid{{"k", {std::int64_t{1}, std::int64_t{3}}}},
                                           Splitter::kfold(2), "misclassification");
}

std::unique_ptr<ReducedForecaster> default_reduction() {
  return std::make_unique<ReducedForecaster>(std::make_unique<LinearRegressor>(), 3, "recursive");
}

}  // namespace

Registry builtin_registry() {
  Registry r = Registry::with_core_scitypes();
  r.add_kind("Normal", [](const ParamMap& params) -> std::unique_ptr<Object> {
    return Normal().with_params(params);
  });
  r.add_kind("MajorityDummyClassifier", atomic<MajorityDummyClassifier>());
  r.add_kind("NearestNeighborClassifier", atomic<NearestNeighborClassifier>());
  r.add_kind("MeanRegressor", atomic<MeanRegressor>());
  r.add_kind("LinearRegressor", atomic<LinearRegressor>());
  r.add_kind("StandardScaler", atomic<StandardScaler>());
  r.add_kind("NaiveLastForecaster", atomic<NaiveLastForecaster>());
  r.add_kind("SimpleExpSmoothing", atomic<SimpleExpSmoothing>());

  r.add_kind("Pipeline", composite(default_pipeline, Pipeline::from_params));
  r.add_kind("Ensemble", composite(default_ensemble, Ensemble::from_params));
  r.add_kind("GridSearchTuner", composite(default_tuner, GridSearchTuner::from_params));
  r.add_kind("ReducedForecaster", composite(default_reduction, ReducedForecaster::from_params));

  contract(r, "ScaledOLS", *default_pipeline(), {{"scaler__with_mean", true}});
  contract(r, "MajorityVoteEnsemble", *voting_ensemble(), {{"aggregator", "majority_vote"}});
  contract(r, "DirectLinearForecaster", *default_reduction(),
           {{"strategy", "direct"}, {"max_horizon", 3}});
  return r;
}

}  // namespace scitype
