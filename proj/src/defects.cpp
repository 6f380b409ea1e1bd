// Deliberately broken estimator kinds. Each violates exactly one contract so
// that the conformance checker can be shown to catch it, and only it.

#include <algorithm>
#include <numeric>

#include "scitype/estimators.hpp"
#include "scitype/registry.hpp"

namespace scitype {

namespace {

/// Centring transformer whose fit reorders the caller's columns in place.
class MutatingScaler final : public Cloneable<MutatingScaler, Transformer> {
 public:
  std::string kind() const override { return "MutatingScaler"; }
  TagMap get_tags() const override {
    return estimator_tags("transformer", true, {{"feature_scitypes", std::vector<std::string>{"numeric"}}});
  }
  DomainDescriptor domain() const override { return real_line_domain(); }

 protected:
  Transformer& fit_impl(const Table& X, const LabelVector* y) override {
    std::vector<std::string> names = X.names();
    std::reverse(names.begin(), names.end());
    const_cast<Table&>(X) = X.select(names);  // the defect
    return Transformer::fit_impl(X, y);
  }
  void fit_canonical(const Table& X, const LabelVector*) override {
    means_.clear();
    for (const auto& c : X.columns()) {
      const auto& v = c.numeric_values();
      means_.push_back(std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()));
    }
  }
  Table transform_canonical(const Table& X) const override {
    std::vector<Column> cols;
    for (std::size_t j = 0; j < X.n_cols(); ++j) {
      auto v = X.column(j).numeric_values();
      for (double& x : v) x -= means_[j];
      cols.push_back(Column::numeric(X.column(j).name(), std::move(v)));
    }
    return Table(std::move(cols));
  }
  ParamMap learner_state() const override { return {{"mean", means_}}; }
  void load_learner_state(const ParamMap& s) override { means_ = s.at("mean").as<std::vector<double>>(); }
  void clear_learner_state() override { means_.clear(); }

 private:
  std::vector<double> means_;
};

/// Majority classifier whose predict answers before fit instead of raising
/// NotFitted.
class UnguardedClassifier final : public Cloneable<UnguardedClassifier, SupervisedLearner> {
 public:
  std::string kind() const override { return "UnguardedClassifier"; }
  TagMap get_tags() const override {
    return estimator_tags("supervised_classifier", true,
                          {{"feature_scitypes", std::vector<std::string>{"numeric", "categorical"}}});
  }
  DomainDescriptor domain() const override {
    if (!is_fitted()) return label_set_domain(std::nullopt);
    return label_set_domain(labels_);
  }

  LabelVector predict(const Table& X) const override {
    if (!is_fitted()) {  // the defect: no fit guard
      return LabelVector::classes(std::vector<std::string>(X.n_rows(), "a"));
    }
    return SupervisedLearner::predict(X);
  }

 protected:
  void fit_canonical(const Table&, const LabelVector& y) override {
    labels_ = y.distinct();
    std::size_t best = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (count(y, labels_[i]) > count(y, labels_[best])) best = i;
    }
    majority_ = labels_[best];
  }
  LabelVector predict_canonical(const Table& X) const override {
    return LabelVector::filled(*majority_, X.n_rows(), LabelDomain::Finite);
  }
  ParamMap learner_state() const override {
    std::vector<std::string> labels;
    for (const auto& l : labels_) labels.push_back(l.as<std::string>());
    return {{"majority_class", *majority_}, {"classes", labels}};
  }
  void load_learner_state(const ParamMap& s) override {
    majority_ = s.at("majority_class");
    labels_.clear();
    for (const auto& l : s.at("classes").as<std::vector<std::string>>()) labels_.emplace_back(l);
  }
  void clear_learner_state() override {
    majority_.reset();
    labels_.clear();
  }

 private:
  static std::size_t count(const LabelVector& y, const ParamValue& label) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < y.size(); ++i) n += y.at(i) == label ? 1 : 0;
    return n;
  }

  std::optional<ParamValue> majority_;
  std::vector<ParamValue> labels_;
};

/// Mean regressor whose hyper-parameters name data columns.
class DataBoundRegressor final : public Cloneable<DataBoundRegressor, SupervisedLearner> {
 public:
  DataBoundRegressor() {
    declare_param("target_column", ParamType::Text, Domain::text(), "y");  // the defect
    declare_param("feature_columns", ParamType::TextList, Domain::text_list(),
                  std::vector<std::string>{"x0", "x1"});
  }
  std::string kind() const override { return "DataBoundRegressor"; }
  TagMap get_tags() const override {
    return estimator_tags("supervised_regressor", true,
                          {{"feature_scitypes", std::vector<std::string>{"numeric", "categorical"}}});
  }
  DomainDescriptor domain() const override { return real_line_domain(); }

 protected:
  void fit_canonical(const Table&, const LabelVector& y) override {
    const auto& v = y.numeric();
    mean_ = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  }
  LabelVector predict_canonical(const Table& X) const override {
    return LabelVector::real(std::vector<double>(X.n_rows(), mean_));
  }
  ParamMap learner_state() const override { return {{"mean", mean_}}; }
  void load_learner_state(const ParamMap& s) override { mean_ = s.at("mean").as_real(); }

 private:
  double mean_ = 0.0;
};

/// Shrunken-mean regressor that reports its hyper-parameter as fitted state.
class LeakyRegressor final : public Cloneable<LeakyRegressor, SupervisedLearner> {
 public:
  LeakyRegressor() { declare_param("ridge", ParamType::Real, Domain::non_negative_reals(), 0.0); }
  std::string kind() const override { return "LeakyRegressor"; }
  TagMap get_tags() const override {
    return estimator_tags("supervised_regressor", true,
                          {{"feature_scitypes", std::vector<std::string>{"numeric", "categorical"}}});
  }
  DomainDescriptor domain() const override { return real_line_domain(); }

 protected:
  void fit_canonical(const Table&, const LabelVector& y) override {
    const auto& v = y.numeric();
    mean_ = std::accumulate(v.begin(), v.end(), 0.0) / (static_cast<double>(v.size()) + real_param("ridge"));
  }
  LabelVector predict_canonical(const Table& X) const override {
    return LabelVector::real(std::vector<double>(X.n_rows(), mean_));
  }
  ParamMap learner_state() const override {
    return {{"mean", mean_}, {"ridge", real_param("ridge")}};  // the defect
  }
  void load_learner_state(const ParamMap& s) override { mean_ = s.at("mean").as_real(); }

 private:
  double mean_ = 0.0;
};

template <class T>
KindDescriptor::Constructor defect() {
  return [](const ParamMap& params) -> std::unique_ptr<Object> {
    auto e = std::make_unique<T>();
    if (!params.empty()) e->set_params(params);
    return e;
  };
}

}  // namespace

void register_defects(Registry& registry) {
  registry.add_kind("MutatingScaler", defect<MutatingScaler>(), {}, true);
  registry.add_kind("UnguardedClassifier", defect<UnguardedClassifier>(), {}, true);
  registry.add_kind("DataBoundRegressor", defect<DataBoundRegressor>(), {}, true);
  registry.add_kind("LeakyRegressor", defect<LeakyRegressor>(), {}, true);
}

std::vector<std::pair<std::string, std::string>> defect_targets() {
  return {{"MutatingScaler", "input_immutability"},
          {"UnguardedClassifier", "not_fitted_errors"},
          {"DataBoundRegressor", "no_data_at_construction"},
          {"LeakyRegressor", "fitted_params_disjointness"}};
}

}  // namespace scitype
