#include "scitype/conformance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <variant>

#include "scitype/compose.hpp"
#include "scitype/distribution.hpp"
#include "scitype/learner.hpp"
#include "scitype/tasks.hpp"

namespace scitype {

std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
  }
  return "fail";
}

const std::vector<CheckSpec>& check_catalog() {
  static const std::vector<CheckSpec> catalog{
      {"params_roundtrip", "object", false,
       "get_params output rebuilds an equivalent object; set_params of it changes nothing"},
      {"unknown_param_error", "object", false,
       "an unknown parameter raises UnknownParameter and leaves the object unchanged"},
      {"tag_presence", "object", false,
       "required tags present, well-typed and identical across instances"},
      {"persistence_roundtrip", "object", false,
       "save then load reproduces kind, params, status, fitted params and outputs"},
      {"no_data_at_construction", "object", false,
       "no hyper-parameter names or holds data (columns, targets, horizons)"},
      {"cdf_monotone", "distribution", false, "cdf nondecreasing within [0, 1] on a 1000-point grid"},
      {"pdf_nonnegative", "distribution", false, "pdf >= 0 on a 1000-point grid"},
      {"pdf_normalized", "distribution", false, "trapezoid integral of pdf over ±8σ is 1 within 1e-6"},
      {"interface_consistency", "estimator", false,
       "the kind implements exactly the interface of its scitype"},
      {"clone_determinism", "estimator", false,
       "clone_unfitted is unfitted with equal params and refits to identical outputs"},
      {"not_fitted_errors", "estimator", false,
       "predict/transform and get_fitted_params raise NotFitted before fit and after set_params"},
      {"fitted_params_disjointness", "estimator", false,
       "fitted-parameter names and hyper-parameter names are disjoint"},
      {"input_immutability", "estimator", false, "fit and predict leave their inputs bit-identical"},
      {"evaluation_purity", "estimator", false,
       "evaluation leaves params, tags, status and fitted params of the estimator unchanged"},
      {"resultant_scitype_law", "estimator", true,
       "a composite has the scitype of its composition signature"},
      {"nested_param_addressing", "estimator", true,
       "component parameters are addressable as component__name, and only those"},
      {"row_permutation_invariance", "tabular_estimator", false,
       "20 training-row permutations give bit-identical outputs"},
      {"column_permutation_invariance", "tabular_estimator", false,
       "10 named-column permutations give bit-identical outputs"},
      {"schema_mismatch_error", "tabular_estimator", false,
       "missing, extra, renamed or retyped columns raise SchemaMismatch"},
      {"prediction_length", "supervised_learner", false, "one prediction per input row"},
      {"predictions_in_label_set", "supervised_classifier", false,
       "predictions lie in the training label set, which the fitted domain reports"},
      {"predictions_finite", "supervised_regressor", false, "predictions are finite reals"},
      {"fit_transform_consistency", "transformer", false,
       "fit_transform equals fit followed by transform"},
      {"horizon_handling", "forecaster", false,
       "one value per offset, EmptyHorizon on an empty fh, sub-horizons agree"},
      {"output_index_monotonic", "forecaster", false,
       "forecast index is cutoff + offset and strictly increasing"},
      {"too_short_error", "forecaster", false, "fit below min_train_length raises TooShort"},
  };
  return catalog;
}

namespace {

struct CheckFailure {
  std::string detail;
};

[[noreturn]] void fail(std::string detail) { throw CheckFailure{std::move(detail)}; }

void expect(bool condition, const std::string& detail) {
  if (!condition) fail(detail);
}

template <class F>
void expect_error(ErrorCode code, F&& f, const std::string& what) {
  try {
    f();
  } catch (const Error& e) {
    if (e.code() == code) return;
    fail(what + " raised " + std::string(to_string(e.code())) + " instead of " +
         std::string(to_string(code)) + ": " + e.what());
  }
  fail(what + " did not raise " + std::string(to_string(code)));
}

using Output = std::variant<LabelVector, Table, TimeSeries>;

struct Context {
  const Registry& registry;
  const KindDescriptor& descriptor;
  Fixture fixture;
  std::string scitype;

  bool is(std::string_view level) const { return registry.is_a(scitype, level); }

  std::unique_ptr<Object> make() const { return registry.create(descriptor.kind_name); }

  std::unique_ptr<Estimator> make_estimator() const {
    return registry.create_estimator(descriptor.kind_name);
  }

  const LabelVector& y() const {
    return scitype == "supervised_classifier" ? fixture.y_class : fixture.y_real;
  }
};

void fit_on(Estimator& e, const Context& c, const Table& X, const LabelVector& y) {
  if (auto* l = dynamic_cast<SupervisedLearner*>(&e)) {
    l->fit(X, y);
  } else if (auto* t = dynamic_cast<Transformer*>(&e)) {
    t->fit(X);
  } else if (auto* f = dynamic_cast<Forecaster*>(&e)) {
    f->fit(c.fixture.series);
  } else {
    fail(e.kind() + " implements no fit interface");
  }
}

void fit_default(Estimator& e, const Context& c) { fit_on(e, c, c.fixture.X_train, c.y()); }

Output output_on(const Estimator& e, const Context& c, const Table& X) {
  if (const auto* l = dynamic_cast<const SupervisedLearner*>(&e)) return l->predict(X);
  if (const auto* t = dynamic_cast<const Transformer*>(&e)) return t->transform(X);
  if (const auto* f = dynamic_cast<const Forecaster*>(&e)) return f->predict(c.fixture.fh);
  fail(e.kind() + " implements no predict interface");
}

Output output_default(const Estimator& e, const Context& c) {
  return output_on(e, c, c.fixture.X_test);
}

/// Transformer outputs compared independently of column order.
Output by_name(const Output& o) {
  if (const auto* t = std::get_if<Table>(&o)) {
    auto names = t->names();
    std::sort(names.begin(), names.end());
    return t->select(names);
  }
  return o;
}

Json snapshot(const Estimator& e) {
  Json s = to_document(e);
  s["tags"] = params_to_json(e.get_tags().entries());
  s["deep_params"] = params_to_json(e.get_params(true));
  return s;
}

const Distribution& as_distribution(const Object& o) {
  const auto* d = dynamic_cast<const Distribution*>(&o);
  if (d == nullptr) fail(o.kind() + " does not implement the distribution interface");
  return *d;
}

std::vector<double> grid_around(const Distribution& d, std::size_t points, double half_width) {
  const double mu = d.get_params(false).at("mu").as_real();
  const double sigma = d.get_params(false).at("sigma").as_real();
  std::vector<double> xs;
  for (std::size_t i = 0; i < points; ++i) {
    xs.push_back(mu - half_width * sigma +
                 2.0 * half_width * sigma * static_cast<double>(i) / static_cast<double>(points - 1));
  }
  return xs;
}

Table with_column(const Table& X, Column extra) {
  std::vector<Column> cols = X.columns();
  cols.push_back(std::move(extra));
  return Table(std::move(cols));
}

Table renamed_column(const Table& X, std::size_t index, const std::string& name) {
  std::vector<Column> cols = X.columns();
  cols[index] = cols[index].renamed(name);
  return Table(std::move(cols));
}

Table categorical_copy(const Table& X, std::size_t index) {
  std::vector<Column> cols = X.columns();
  std::vector<std::string> text;
  for (double v : cols[index].numeric_values()) text.push_back(ParamValue(v).render());
  cols[index] = Column::categorical(cols[index].name(), std::move(text));
  return Table(std::move(cols));
}

// ---------------------------------------------------------------- object level

std::string check_params_roundtrip(const Context& c) {
  auto obj = c.make();
  const ParamMap shallow = obj->get_params(false);
  auto rebuilt = c.registry.create(c.descriptor.kind_name, shallow);
  expect(rebuilt->get_params(true) == obj->get_params(true),
         "rebuilding from get_params(deep=false) changed the parameters");

  auto* e = dynamic_cast<Estimator*>(obj.get());
  if (e == nullptr) {
    const auto& d = as_distribution(*obj);
    auto copy = d.with_params(shallow);
    expect(copy->get_params(true) == shallow, "with_params(get_params()) changed the parameters");
    return "parameters rebuild an identical object";
  }
  ParamMap settable;
  for (const auto& [k, v] : e->get_params(true)) {
    if (!v.is<EstimatorRef>()) settable.set(k, v);
  }
  auto clone = e->clone_unfitted();
  clone->set_params(settable);
  expect(clone->get_params(true) == e->get_params(true),
         "set_params(get_params(deep=true)) changed the parameters");
  fit_default(*e, c);
  fit_default(*clone, c);
  expect(output_default(*e, c) == output_default(*clone, c),
         "outputs differ after re-applying the parameters");
  return std::to_string(settable.size()) + " parameters round-trip; outputs identical";
}

std::string check_unknown_param_error(const Context& c) {
  auto obj = c.make();
  const ParamMap bad{{"no_such_parameter", 1}};
  if (auto* e = dynamic_cast<Estimator*>(obj.get())) {
    fit_default(*e, c);
    const ParamMap before = e->get_params(true);
    expect_error(ErrorCode::UnknownParameter, [&] { e->set_params(bad); }, "set_params(no_such_parameter)");
    expect(e->get_params(true) == before, "a rejected set_params changed the parameters");
    expect(e->is_fitted(), "a rejected set_params reset the fitted state");
    return "UnknownParameter raised; estimator untouched";
  }
  const auto& d = as_distribution(*obj);
  expect_error(ErrorCode::UnknownParameter, [&] { d.with_params(bad); }, "with_params(no_such_parameter)");
  return "UnknownParameter raised";
}

std::string check_tag_presence(const Context& c) {
  auto obj = c.make();
  const TagMap tags = obj->get_tags();
  std::vector<std::string> missing;
  auto require = [&](const char* name, ParamType type) {
    const auto* v = tags.find(name);
    if (v == nullptr) {
      missing.push_back(name);
    } else if (v->type() != type) {
      fail(std::string("tag '") + name + "' has type " + std::string(to_string(v->type())));
    }
  };
  require("scitype", ParamType::Text);
  require("deterministic", ParamType::Boolean);
  require("handles_missing", ParamType::Boolean);
  if (c.is("distribution")) {
    require("symmetric", ParamType::Boolean);
    require("support", ParamType::Text);
  }
  expect(missing.empty(), "missing required tag(s): " + [&] {
    std::string s;
    for (const auto& m : missing) s += (s.empty() ? "" : ", ") + m;
    return s;
  }());
  expect(tags["scitype"].as<std::string>() == c.descriptor.scitype,
         "scitype tag differs from the registered scitype");
  expect(c.make()->get_tags() == tags, "tags differ between two instances");
  expect(tags == c.descriptor.tags, "tags differ from the registered tags");

  std::vector<std::string> warnings;
  if (c.is("estimator")) {
    for (const char* optional : {"capability_update", "is_composite"}) {
      if (!tags.contains(optional)) warnings.emplace_back(optional);
    }
  }
  std::string detail = std::to_string(tags.size()) + " tags";
  if (!warnings.empty()) {
    detail += "; warning: optional tag(s) absent:";
    for (const auto& w : warnings) detail += " " + w;
  }
  return detail;
}

std::string check_persistence_roundtrip(const Context& c) {
  auto obj = c.make();
  auto* e = dynamic_cast<Estimator*>(obj.get());
  const Json doc0 = to_document(*obj);
  auto loaded0 = load(save(*obj), c.registry);
  expect(to_document(*loaded0) == doc0, "unfitted save/load changed the document");
  expect(loaded0->get_tags() == obj->get_tags(), "save/load changed the tags");
  if (e == nullptr) {
    const auto& a = as_distribution(*obj);
    const auto& b = as_distribution(*loaded0);
    for (double x : grid_around(a, 11, 3.0)) {
      expect(a.pdf(x) == b.pdf(x) && a.cdf(x) == b.cdf(x), "loaded distribution evaluates differently");
    }
    return "value object round-trips";
  }
  fit_default(*e, c);
  const Json doc1 = to_document(*e);
  auto loaded1 = load(save(*e), c.registry);
  const auto* le = dynamic_cast<const Estimator*>(loaded1.get());
  expect(le != nullptr && le->is_fitted(), "loaded estimator is not fitted");
  expect(to_document(*le) == doc1, "fitted save/load changed the document");
  expect(output_default(*le, c) == output_default(*e, c), "loaded estimator predicts differently");
  return "unfitted and fitted documents round-trip; outputs identical";
}

std::string check_no_data_at_construction(const Context& c) {
  auto obj = c.make();
  std::set<std::string> columns;
  for (const auto& n : c.fixture.X_train.names()) columns.insert(n);
  for (const auto& [key, value] : obj->get_params(true)) {
    const auto cut = key.rfind("__");
    const std::string leaf = cut == std::string::npos ? key : key.substr(cut + 2);
    if (is_data_bound_param_name(leaf)) fail("parameter '" + key + "' names data");
    if (value.is<std::string>() && columns.contains(value.as<std::string>())) {
      fail("parameter '" + key + "' holds the column name '" + value.as<std::string>() + "'");
    }
    if (value.is<std::vector<std::string>>()) {
      for (const auto& s : value.as<std::vector<std::string>>()) {
        if (columns.contains(s)) fail("parameter '" + key + "' holds the column name '" + s + "'");
      }
    }
  }
  return "no data-bound parameters";
}

// ---------------------------------------------------------------- distribution level

std::string check_cdf_monotone(const Context& c) {
  auto obj = c.make();
  const auto& d = as_distribution(*obj);
  double prev = -1.0;
  for (double x : grid_around(d, 1000, 10.0)) {
    const double v = d.cdf(x);
    expect(v >= 0.0 && v <= 1.0, "cdf(" + ParamValue(x).render() + ") outside [0, 1]");
    expect(v >= prev, "cdf decreases at " + ParamValue(x).render());
    prev = v;
  }
  return "nondecreasing on 1000 points";
}

std::string check_pdf_nonnegative(const Context& c) {
  auto obj = c.make();
  const auto& d = as_distribution(*obj);
  for (double x : grid_around(d, 1000, 10.0)) {
    expect(d.pdf(x) >= 0.0, "pdf(" + ParamValue(x).render() + ") is negative");
  }
  return "nonnegative on 1000 points";
}

std::string check_pdf_normalized(const Context& c) {
  auto obj = c.make();
  const auto& d = as_distribution(*obj);
  const auto xs = grid_around(d, 20001, 8.0);
  double integral = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    integral += 0.5 * (xs[i] - xs[i - 1]) * (d.pdf(xs[i]) + d.pdf(xs[i - 1]));
  }
  expect(std::abs(integral - 1.0) <= 1e-6, "pdf integrates to " + ParamValue(integral).render());
  std::ostringstream os;
  os << "integral " << std::setprecision(12) << integral;
  return os.str();
}

// ---------------------------------------------------------------- estimator level

std::string check_interface_consistency(const Context& c) {
  auto e = c.make_estimator();
  const bool learner = dynamic_cast<const SupervisedLearner*>(e.get()) != nullptr;
  const bool transformer = dynamic_cast<const Transformer*>(e.get()) != nullptr;
  const bool forecaster = dynamic_cast<const Forecaster*>(e.get()) != nullptr;
  expect(e->is_entity(), "estimators must be entity objects");
  expect(learner + transformer + forecaster == 1, "kind implements " +
                                                      std::to_string(learner + transformer + forecaster) +
                                                      " learning interfaces, expected exactly one");
  expect(learner == c.is("supervised_learner"), "supervised-learner interface does not match the scitype");
  expect(transformer == c.is("transformer"), "transformer interface does not match the scitype");
  expect(forecaster == c.is("forecaster"), "forecaster interface does not match the scitype");
  if (learner) {
    const auto& l = dynamic_cast<const SupervisedLearner&>(*e);
    expect(l.is_classifier() == (c.scitype == "supervised_classifier"),
           "classifier flag does not match the scitype");
  }
  expect(&c.registry.scitype_of(*e) == &c.registry.scitype(c.scitype), "scitype_of disagrees with the tag");
  return "implements the " + c.scitype + " interface only";
}

std::string check_clone_determinism(const Context& c) {
  auto e = c.make_estimator();
  fit_default(*e, c);
  const Output first = output_default(*e, c);
  auto clone = e->clone_unfitted();
  expect(!clone->is_fitted(), "clone_unfitted returned a fitted estimator");
  expect(clone->kind() == e->kind(), "clone has a different kind");
  expect(clone->get_params(true) == e->get_params(true), "clone has different parameters");
  expect(e->is_fitted(), "cloning reset the original");
  fit_default(*clone, c);
  expect(output_default(*clone, c) == first, "refitted clone predicts differently");
  fit_default(*e, c);
  expect(output_default(*e, c) == first, "refitting the original changed its outputs");
  expect(clone->get_fitted_params() == e->get_fitted_params(), "refit produced different fitted params");
  return "clone refits to identical outputs and fitted params";
}

std::string check_not_fitted_errors(const Context& c) {
  auto e = c.make_estimator();
  expect(e->status() == FitStatus::Unfitted, "a new estimator is not Unfitted");
  expect_error(ErrorCode::NotFitted, [&] { output_default(*e, c); }, "predict before fit");
  expect_error(ErrorCode::NotFitted, [&] { e->get_fitted_params(); }, "get_fitted_params before fit");
  fit_default(*e, c);
  expect(e->status() == FitStatus::Fitted, "fit did not set status Fitted");
  auto clone = e->clone_unfitted();
  expect_error(ErrorCode::NotFitted, [&] { output_default(*clone, c); }, "predict on clone_unfitted");
  e->set_params(ParamMap{});
  expect(e->status() == FitStatus::Unfitted, "set_params did not reset to Unfitted");
  expect_error(ErrorCode::NotFitted, [&] { output_default(*e, c); }, "predict after set_params");
  expect_error(ErrorCode::NotFitted, [&] { e->get_fitted_params(); }, "get_fitted_params after set_params");
  return "NotFitted before fit, on clones and after set_params";
}

std::string check_fitted_params_disjointness(const Context& c) {
  auto e = c.make_estimator();
  fit_default(*e, c);
  const ParamMap fitted = e->get_fitted_params();
  const ParamMap params = e->get_params(true);
  std::string overlap;
  for (const auto& k : fitted.keys()) {
    if (params.contains(k)) overlap += (overlap.empty() ? "" : ", ") + k;
  }
  expect(overlap.empty(), "keys are both parameters and fitted parameters: " + overlap);
  expect(!fitted.empty(), "a fitted estimator exposes no fitted parameters");
  return std::to_string(fitted.size()) + " fitted params, " + std::to_string(params.size()) +
         " params, no overlap";
}

std::string check_input_immutability(const Context& c) {
  auto e = c.make_estimator();
  const Fixture pristine = c.fixture;
  Fixture working = c.fixture;
  auto unchanged = [&](const std::string& call) {
    expect(working.X_train == pristine.X_train, call + " modified the training table");
    expect(working.y_class == pristine.y_class && working.y_real == pristine.y_real,
           call + " modified the target");
    expect(working.X_test == pristine.X_test, call + " modified its input table");
    expect(working.series == pristine.series, call + " modified the series");
    expect(working.fh == pristine.fh, call + " modified the horizon");
  };
  if (auto* l = dynamic_cast<SupervisedLearner*>(e.get())) {
    LabelVector& y = c.scitype == "supervised_classifier" ? working.y_class : working.y_real;
    l->fit(working.X_train, y);
    unchanged("fit");
    l->predict(working.X_test);
    unchanged("predict");
  } else if (auto* t = dynamic_cast<Transformer*>(e.get())) {
    t->fit(working.X_train);
    unchanged("fit");
    t->transform(working.X_test);
    unchanged("transform");
    t->fit_transform(working.X_train);
    unchanged("fit_transform");
  } else if (auto* f = dynamic_cast<Forecaster*>(e.get())) {
    f->fit(working.series);
    unchanged("fit");
    f->predict(working.fh);
    unchanged("predict");
  }
  return "inputs bit-identical after every call";
}

std::string check_evaluation_purity(const Context& c) {
  auto e = c.make_estimator();
  auto evaluate = [&] {
    if (c.is("supervised_learner")) {
      const LabelVector& y = c.y();
      Column target = y.is_numeric() ? Column::numeric("target", y.numeric())
                                     : Column::categorical("target", y.text());
      const Table data = with_column(c.fixture.X_train, std::move(target));
      SupervisedTask task;
      task.target = "target";
      task.flavor = c.scitype == "supervised_classifier" ? TaskFlavor::Classification : TaskFlavor::Regression;
      task.loss = task.flavor == TaskFlavor::Classification ? "misclassification" : "squared";
      evaluate_supervised(*e, task, data, Splitter::kfold(2));
    } else {
      ForecastingTask task;
      task.fh = ForecastingHorizon{1, 2};
      evaluate_forecaster(*e, task, c.fixture.series, 0.7);
    }
  };
  const Json before_unfitted = snapshot(*e);
  evaluate();
  expect(snapshot(*e) == before_unfitted, "evaluation changed the unfitted estimator");
  fit_default(*e, c);
  const Json before_fitted = snapshot(*e);
  evaluate();
  expect(snapshot(*e) == before_fitted, "evaluation changed the fitted estimator");
  return "params, tags, status and fitted params unchanged";
}

std::string check_resultant_scitype_law(const Context& c) {
  auto e = c.make_estimator();
  const std::string actual = c.registry.scitype_of(*e).id;
  std::string expected;
  std::string signature;
  if (const auto* p = dynamic_cast<const Pipeline*>(e.get())) {
    expected = p->component(p->final_name()).scitype();
    signature = "(Transformer)^n × SupervisedLearner → SupervisedLearner";
  } else if (const auto* en = dynamic_cast<const Ensemble*>(e.get())) {
    expected = en->component(en->component_names().front()).scitype();
    for (const auto& n : en->component_names()) {
      expect(en->component(n).scitype() == expected, "ensemble members have different scitypes");
    }
    signature = "(SupervisedLearner)^n → SupervisedLearner";
  } else if (const auto* t = dynamic_cast<const GridSearchTuner*>(e.get())) {
    expected = t->component("inner").scitype();
    signature = "SupervisedLearner → SupervisedLearner";
  } else if (dynamic_cast<const ReducedForecaster*>(e.get()) != nullptr) {
    expected = "forecaster";
    signature = "SupervisedRegressor → Forecaster";
  } else {
    fail("no composition signature is known for " + e->kind());
  }
  expect(actual == expected, "scitype " + actual + " but the signature " + signature + " gives " + expected);
  expect(c.descriptor.scitype == expected, "registered scitype differs from the signature's");
  return signature + " holds (" + actual + ")";
}

std::string check_nested_param_addressing(const Context& c) {
  auto e = c.make_estimator();
  const ParamMap deep = e->get_params(true);
  std::set<std::string> expected;
  for (const auto& k : e->get_params(false).keys()) expected.insert(k);
  for (const auto& name : e->component_names()) {
    for (const auto& k : e->component(name).get_params(true).keys()) expected.insert(name + "__" + k);
  }
  const auto keys = deep.keys();
  expect(std::set<std::string>(keys.begin(), keys.end()) == expected,
         "deep parameter keys are not own ∪ component__key");
  expect(keys.size() == expected.size(), "deep parameter keys repeat");

  std::size_t nested = 0;
  bool flipped = false;
  for (const auto& [key, value] : deep) {
    if (key.find("__") == std::string::npos || value.is<EstimatorRef>()) continue;
    ++nested;
    expect(e->find_param_spec(key).has_value(), "no spec for nested key " + key);
    const auto [head, tail] = split_nested(key);
    e->set_params({{key, value}});
    expect(e->get_params(true).at(key) == value, "writing " + key + " did not read back");
    if (!flipped && value.is<bool>()) {
      e->set_params({{key, !value.as<bool>()}});
      expect(e->component(head).get_params(true).at(tail) == ParamValue(!value.as<bool>()),
             "writing " + key + " did not reach component " + std::string(head));
      e->set_params({{key, value}});
      flipped = true;
    }
  }
  const std::string first = e->component_names().front();
  expect_error(ErrorCode::UnknownParameter,
               [&] { e->set_params({{first + "__no_such_parameter", 1}}); },
               "set_params(" + first + "__no_such_parameter)");
  expect_error(ErrorCode::UnknownParameter, [&] { e->set_params({{"no_such_component__k", 1}}); },
               "set_params(no_such_component__k)");
  return std::to_string(nested) + " nested parameters addressable";
}

// ---------------------------------------------------------------- tabular level

constexpr std::uint64_t kPermutationSeed = 20240917;

std::string check_row_permutation_invariance(const Context& c) {
  auto base = c.make_estimator();
  fit_default(*base, c);
  const Output reference = output_default(*base, c);
  std::mt19937_64 rng(kPermutationSeed);
  std::vector<std::size_t> perm(c.fixture.X_train.n_rows());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (int i = 0; i < 20; ++i) {
    std::shuffle(perm.begin(), perm.end(), rng);
    auto e = c.make_estimator();
    fit_on(*e, c, c.fixture.X_train.take_rows(perm), c.y().take(perm));
    expect(output_default(*e, c) == reference, "outputs differ for row permutation #" + std::to_string(i + 1));
  }
  return "20 row permutations agree bit-for-bit";
}

std::string check_column_permutation_invariance(const Context& c) {
  auto base = c.make_estimator();
  fit_default(*base, c);
  const Output reference = by_name(output_default(*base, c));
  std::mt19937_64 rng(kPermutationSeed + 1);
  auto names = c.fixture.X_train.names();
  for (int i = 0; i < 10; ++i) {
    std::shuffle(names.begin(), names.end(), rng);
    auto e = c.make_estimator();
    fit_on(*e, c, c.fixture.X_train.select(names), c.y());
    const Output out = by_name(output_on(*e, c, c.fixture.X_test.select(names)));
    expect(out == reference, "outputs differ for column permutation #" + std::to_string(i + 1));
  }
  return "10 column permutations agree bit-for-bit";
}

std::string check_schema_mismatch_error(const Context& c) {
  auto e = c.make_estimator();
  fit_default(*e, c);
  const Table& X = c.fixture.X_test;
  expect(X.n_cols() >= 2, "fixture needs at least two columns");
  const std::string last = X.names().back();
  expect_error(ErrorCode::SchemaMismatch, [&] { output_on(*e, c, X.drop(last)); }, "missing column");
  expect_error(ErrorCode::SchemaMismatch,
               [&] { output_on(*e, c, with_column(X, Column::numeric("unexpected", std::vector<double>(X.n_rows(), 1.0)))); },
               "extra column");
  expect_error(ErrorCode::SchemaMismatch, [&] { output_on(*e, c, renamed_column(X, 1, "renamed")); },
               "renamed column");
  expect_error(ErrorCode::SchemaMismatch, [&] { output_on(*e, c, categorical_copy(X, 0)); },
               "retyped column");
  return "missing, extra, renamed and retyped columns rejected";
}

// ---------------------------------------------------------------- learner level

const SupervisedLearner& as_learner(const Estimator& e) {
  return dynamic_cast<const SupervisedLearner&>(e);
}

std::string check_prediction_length(const Context& c) {
  auto e = c.make_estimator();
  fit_default(*e, c);
  const auto& l = as_learner(*e);
  const std::vector<std::size_t> first{0};
  expect(l.predict(c.fixture.X_test).size() == c.fixture.X_test.n_rows(), "wrong length on the test table");
  expect(l.predict(c.fixture.X_test.take_rows(first)).size() == 1, "wrong length on one row");
  expect(l.predict(c.fixture.X_train).size() == c.fixture.X_train.n_rows(), "wrong length on the training table");
  return "one prediction per row";
}

std::string check_predictions_in_label_set(const Context& c) {
  auto e = c.make_estimator();
  fit_default(*e, c);
  const auto& l = as_learner(*e);
  const auto labels = c.fixture.y_class.distinct();
  for (const Table* X : {&c.fixture.X_test, &c.fixture.X_train}) {
    const LabelVector p = l.predict(*X);
    expect(p.domain() == LabelDomain::Finite, "predictions are not finite-domain labels");
    for (std::size_t i = 0; i < p.size(); ++i) {
      expect(std::find(labels.begin(), labels.end(), p.at(i)) != labels.end(),
             "prediction " + p.at(i).render() + " is not a training label");
    }
  }
  const auto domain = c.registry.domain_of(*e);
  expect(domain.label_set.has_value(), "the fitted domain reports no label set");
  expect(*domain.label_set == labels, "the fitted domain's label set differs from the training labels");
  return "predictions within " + domain.description();
}

std::string check_predictions_finite(const Context& c) {
  auto e = c.make_estimator();
  fit_default(*e, c);
  const LabelVector p = as_learner(*e).predict(c.fixture.X_test);
  expect(p.is_numeric() && p.domain() == LabelDomain::Real, "predictions are not real-valued");
  for (double v : p.numeric()) expect(std::isfinite(v), "non-finite prediction");
  return "all predictions finite";
}

std::string check_fit_transform_consistency(const Context& c) {
  auto a = c.make_estimator();
  auto b = c.make_estimator();
  auto& ta = dynamic_cast<Transformer&>(*a);
  auto& tb = dynamic_cast<Transformer&>(*b);
  const Table X1 = c.fixture.X_train;
  const Table X2 = c.fixture.X_train;
  const Table combined = ta.fit_transform(X1);
  tb.fit(X2);
  const Table separate = tb.transform(X2);
  expect(combined.n_rows() == c.fixture.X_train.n_rows(), "fit_transform changed the row count");
  expect(combined == separate, "fit_transform differs from fit then transform");
  return "fit_transform == fit; transform";
}

// ---------------------------------------------------------------- forecaster level

Forecaster& as_forecaster(Estimator& e) { return dynamic_cast<Forecaster&>(e); }

std::string check_horizon_handling(const Context& c) {
  auto e = c.make_estimator();
  auto& f = as_forecaster(*e);
  f.fit(c.fixture.series);
  const TimeSeries full = f.predict(c.fixture.fh);
  expect(full.size() == c.fixture.fh.size(), "one forecast per offset expected");
  expect_error(ErrorCode::EmptyHorizon, [&] { f.predict(ForecastingHorizon{}); }, "predict(empty fh)");
  const auto& offsets = c.fixture.fh.offsets();
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    const TimeSeries single = f.predict(ForecastingHorizon{offsets[i]});
    expect(single.values().front() == full.values()[i] ||
               (std::isnan(single.values().front()) && std::isnan(full.values()[i])),
           "forecast for offset " + std::to_string(offsets[i]) + " depends on the other offsets");
  }
  return std::to_string(offsets.size()) + " offsets, sub-horizons consistent";
}

std::string check_output_index_monotonic(const Context& c) {
  auto e = c.make_estimator();
  auto& f = as_forecaster(*e);
  std::vector<std::int64_t> shifted;
  for (std::size_t i = 0; i < c.fixture.series.size(); ++i) shifted.push_back(100 + 2 * static_cast<std::int64_t>(i));
  for (const TimeSeries& y : {c.fixture.series, TimeSeries(shifted, c.fixture.series.values())}) {
    f.fit(y);
    expect(f.cutoff() == y.index().back(), "cutoff is not the last training index");
    const TimeSeries p = f.predict(c.fixture.fh);
    for (std::size_t i = 0; i < p.size(); ++i) {
      expect(p.index()[i] == f.cutoff() + c.fixture.fh.offsets()[i], "forecast index is not cutoff + offset");
      if (i > 0) expect(p.index()[i] > p.index()[i - 1], "forecast index not strictly increasing");
    }
  }
  return "index = cutoff + offset, strictly increasing";
}

std::string check_too_short_error(const Context& c) {
  auto e = c.make_estimator();
  auto& f = as_forecaster(*e);
  const std::size_t m = f.min_train_length();
  expect(m >= 1, "min_train_length must be at least 1");
  expect(m <= c.fixture.series.size(), "fixture series shorter than min_train_length");
  expect_error(ErrorCode::TooShort, [&] { f.fit(c.fixture.series.head(m - 1)); },
               "fit on " + std::to_string(m - 1) + " observations");
  expect(!f.is_fitted(), "a failed fit left the forecaster fitted");
  f.fit(c.fixture.series.head(m));
  expect(f.is_fitted(), "fit on min_train_length observations failed");
  return "TooShort below " + std::to_string(m) + " observations";
}

using CheckFn = std::function<std::string(const Context&)>;

const std::map<std::string, CheckFn>& check_functions() {
  static const std::map<std::string, CheckFn> fns{
      {"params_roundtrip", check_params_roundtrip},
      {"unknown_param_error", check_unknown_param_error},
      {"tag_presence", check_tag_presence},
      {"persistence_roundtrip", check_persistence_roundtrip},
      {"no_data_at_construction", check_no_data_at_construction},
      {"cdf_monotone", check_cdf_monotone},
      {"pdf_nonnegative", check_pdf_nonnegative},
      {"pdf_normalized", check_pdf_normalized},
      {"interface_consistency", check_interface_consistency},
      {"clone_determinism", check_clone_determinism},
      {"not_fitted_errors", check_not_fitted_errors},
      {"fitted_params_disjointness", check_fitted_params_disjointness},
      {"input_immutability", check_input_immutability},
      {"evaluation_purity", check_evaluation_purity},
      {"resultant_scitype_law", check_resultant_scitype_law},
      {"nested_param_addressing", check_nested_param_addressing},
      {"row_permutation_invariance", check_row_permutation_invariance},
      {"column_permutation_invariance", check_column_permutation_invariance},
      {"schema_mismatch_error", check_schema_mismatch_error},
      {"prediction_length", check_prediction_length},
      {"predictions_in_label_set", check_predictions_in_label_set},
      {"predictions_finite", check_predictions_finite},
      {"fit_transform_consistency", check_fit_transform_consistency},
      {"horizon_handling", check_horizon_handling},
      {"output_index_monotonic", check_output_index_monotonic},
      {"too_short_error", check_too_short_error},
  };
  return fns;
}

std::optional<std::string> skip_reason(const CheckSpec& spec, const Context& c) {
  if (!c.is(spec.level)) return "scitype: " + c.scitype;
  if (spec.composite_only && !c.descriptor.is_composite) return std::string("capability: is_composite=false");
  if (spec.id == "evaluation_purity" && c.is("transformer")) return "scitype: " + c.scitype;
  if (spec.id == "clone_determinism") {
    const auto* d = c.descriptor.tags.find("deterministic");
    if (d != nullptr && d->is<bool>() && !d->as<bool>()) return std::string("capability: deterministic=false");
  }
  return std::nullopt;
}

}  // namespace

bool is_data_bound_param_name(std::string_view name) {
  static const std::set<std::string, std::less<>> exact{
      "column", "columns", "data", "dataset", "feature", "features", "fh", "horizon", "index",
      "label", "labels", "series", "table", "target", "targets", "x", "y"};
  if (exact.contains(name)) return true;
  for (std::string_view suffix : {"_column", "_columns", "_data", "_target", "_targets", "_features"}) {
    if (name.size() > suffix.size() && name.substr(name.size() - suffix.size()) == suffix) return true;
  }
  return false;
}

std::size_t ConformanceReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(
      std::count_if(results.begin(), results.end(), [&](const CheckResult& r) { return r.status == s; }));
}

const CheckResult* ConformanceReport::find(std::string_view check_id) const {
  for (const auto& r : results) {
    if (r.check_id == check_id) return &r;
  }
  return nullptr;
}

Json ConformanceReport::to_json() const {
  Json j = Json::object();
  j["kind"] = kind;
  j["scitype"] = scitype;
  Json results_json = Json::array();
  for (const auto& r : results) {
    Json rj = Json::object();
    rj["check"] = r.check_id;
    rj["status"] = std::string(to_string(r.status));
    rj["detail"] = r.detail;
    rj["skip_reason"] = r.skip_reason ? Json(*r.skip_reason) : Json(nullptr);
    results_json.push_back(std::move(rj));
  }
  j["results"] = std::move(results_json);
  Json summary = Json::object();
  summary["pass"] = count(CheckStatus::Pass);
  summary["fail"] = count(CheckStatus::Fail);
  summary["skip"] = count(CheckStatus::Skip);
  j["summary"] = std::move(summary);
  return j;
}

ConformanceReport check_estimator(const Registry& registry, std::string_view kind) {
  const KindDescriptor& descriptor = registry.kind(kind);
  Context ctx{registry, descriptor, descriptor.test_fixture(), descriptor.scitype};
  ConformanceReport report;
  report.kind = descriptor.kind_name;
  report.scitype = descriptor.scitype;
  for (const auto& spec : check_catalog()) {
    CheckResult r;
    r.check_id = spec.id;
    if (auto reason = skip_reason(spec, ctx)) {
      r.status = CheckStatus::Skip;
      r.skip_reason = std::move(reason);
      r.detail = "not required for this kind";
    } else {
      try {
        r.detail = check_functions().at(spec.id)(ctx);
        r.status = CheckStatus::Pass;
      } catch (const CheckFailure& f) {
        r.status = CheckStatus::Fail;
        r.detail = f.detail;
      } catch (const std::exception& e) {
        r.status = CheckStatus::Fail;
        r.detail = std::string("unexpected error: ") + e.what();
      }
    }
    report.results.push_back(std::move(r));
  }
  return report;
}

std::vector<ConformanceReport> check_all(const Registry& registry) {
  std::vector<ConformanceReport> out;
  for (const auto* k : registry.kinds()) out.push_back(check_estimator(registry, k->kind_name));
  return out;
}

Json reports_to_json(const std::vector<ConformanceReport>& reports) {
  Json j = Json::object();
  Json arr = Json::array();
  std::vector<std::string> failed;
  for (const auto& r : reports) {
    arr.push_back(r.to_json());
    if (!r.passed()) failed.push_back(r.kind);
  }
  j["reports"] = std::move(arr);
  Json summary = Json::object();
  summary["kinds"] = reports.size();
  summary["failed_kinds"] = failed;
  summary["passed"] = failed.empty();
  j["summary"] = std::move(summary);
  return j;
}

std::string render_table(const std::vector<ConformanceReport>& reports) {
  std::size_t kind_w = 4, check_w = 5;
  for (const auto& r : reports) {
    kind_w = std::max(kind_w, r.kind.size());
    for (const auto& c : r.results) check_w = std::max(check_w, c.check_id.size());
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(kind_w)) << "KIND" << "  " << std::setw(static_cast<int>(check_w))
     << "CHECK" << "  STATUS  DETAIL\n";
  for (const auto& r : reports) {
    for (const auto& c : r.results) {
      os << std::setw(static_cast<int>(kind_w)) << r.kind << "  " << std::setw(static_cast<int>(check_w))
         << c.check_id << "  " << std::setw(6) << to_string(c.status) << "  "
         << (c.skip_reason ? *c.skip_reason : c.detail) << '\n';
    }
  }
  std::size_t failed = 0;
  for (const auto& r : reports) failed += r.passed() ? 0 : 1;
  os << reports.size() << " kind(s) checked, " << failed << " with failures\n";
  return os.str();
}

}  // namespace scitype
