#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "scitype/learner.hpp"

namespace scitype {

/// Always predicts the most frequent training label. No parameters.
/// Count ties go to the first label in canonical label order.
class MajorityDummyClassifier final : public Cloneable<MajorityDummyClassifier, SupervisedLearner> {
 public:
  MajorityDummyClassifier() = default;

  std::string kind() const override { return "MajorityDummyClassifier"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

 protected:
  void fit_canonical(const Table& X, const LabelVector& y) override;
  LabelVector predict_canonical(const Table& X) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override;

 private:
  std::optional<ParamValue> majority_;
  std::vector<ParamValue> labels_;
};

/// k-nearest-neighbour vote under Euclidean distance on numeric columns.
/// Distance ties resolve to the lowest training row in canonical row order;
/// vote ties to the first label in canonical label order.
class NearestNeighborClassifier final
    : public Cloneable<NearestNeighborClassifier, SupervisedLearner> {
 public:
  explicit NearestNeighborClassifier(std::int64_t k = 3);

  std::string kind() const override { return "NearestNeighborClassifier"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

 protected:
  void fit_canonical(const Table& X, const LabelVector& y) override;
  LabelVector predict_canonical(const Table& X) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override;

 private:
  Eigen::MatrixXd train_;
  std::optional<LabelVector> labels_;
};

/// Predicts the training-target mean; ignores features.
class MeanRegressor final : public Cloneable<MeanRegressor, SupervisedLearner> {
 public:
  MeanRegressor() = default;

  std::string kind() const override { return "MeanRegressor"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

 protected:
  void fit_canonical(const Table& X, const LabelVector& y) override;
  LabelVector predict_canonical(const Table& X) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override { mean_ = 0.0; }

 private:
  double mean_ = 0.0;
};

/// Ordinary least squares through the normal equations
/// (AᵀA + λI) β = Aᵀy, A = [1 | X].
///
/// λ is the `ridge` parameter (the intercept is not penalised). A
/// rank-deficient AᵀA gets an extra λ = 1e-10 on the whole diagonal so the
/// solution stays unique and deterministic.
class LinearRegressor final : public Cloneable<LinearRegressor, SupervisedLearner> {
 public:
  static constexpr double kRankDeficiencyRidge = 1e-10;

  LinearRegressor();

  std::string kind() const override { return "LinearRegressor"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

  double intercept() const;
  const Eigen::VectorXd& coefficients() const;

 protected:
  void fit_canonical(const Table& X, const LabelVector& y) override;
  LabelVector predict_canonical(const Table& X) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override;

 private:
  double intercept_ = 0.0;
  Eigen::VectorXd coef_;
};

/// Column-wise (x - mean) / scale with the population standard deviation.
/// Constant columns get scale 1, so they map to 0 when centring.
class StandardScaler final : public Cloneable<StandardScaler, Transformer> {
 public:
  StandardScaler(bool with_mean = true, bool with_scale = true);

  std::string kind() const override { return "StandardScaler"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

 protected:
  void fit_canonical(const Table& X, const LabelVector* y) override;
  Table transform_canonical(const Table& X) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override;

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

/// Repeats the last observed value.
class NaiveLastForecaster final : public Cloneable<NaiveLastForecaster, Forecaster> {
 public:
  NaiveLastForecaster() = default;

  std::string kind() const override { return "NaiveLastForecaster"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

 protected:
  void fit_series(const TimeSeries& y) override;
  std::vector<double> predict_offsets(const ForecastingHorizon& fh) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override { last_ = 0.0; }

 private:
  double last_ = 0.0;
};

/// level_1 = y_1, level_t = alpha * y_t + (1 - alpha) * level_{t-1};
/// every forecast is the final level.
class SimpleExpSmoothing final : public Cloneable<SimpleExpSmoothing, Forecaster> {
 public:
  explicit SimpleExpSmoothing(double alpha = 0.5);

  std::string kind() const override { return "SimpleExpSmoothing"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

 protected:
  void fit_series(const TimeSeries& y) override;
  std::vector<double> predict_offsets(const ForecastingHorizon& fh) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override { level_ = 0.0; }

 private:
  double level_ = 0.0;
};

/// Domain shared by the real-valued kinds.
DomainDescriptor real_line_domain();
/// Finite-label domain; the label set is known once fitted.
DomainDescriptor label_set_domain(std::optional<std::vector<ParamValue>> labels);

}  // namespace scitype
