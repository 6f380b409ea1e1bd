#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "scitype/learner.hpp"
#include "scitype/registry.hpp"
#include "scitype/tasks.hpp"

namespace scitype {

template <class T>
using Named = std::pair<std::string, std::unique_ptr<T>>;

/// (Transformer)^n × SupervisedLearner → SupervisedLearner.
///
/// fit threads the table through each step's fit_transform and fits the
/// final learner on the result; predict applies the fitted transforms in
/// order and then the final learner. The pipeline has the final learner's
/// scitype. Errors carry the name of the failing component.
class Pipeline final : public Cloneable<Pipeline, SupervisedLearner> {
 public:
  Pipeline(std::vector<Named<Transformer>> steps, Named<SupervisedLearner> final);
  /// Builds from shallow parameters: component references in order (the
  /// last one is the final learner), then any other keys via set_params.
  static std::unique_ptr<Pipeline> from_params(const ParamMap& params);

  std::string kind() const override { return "Pipeline"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

  std::vector<std::string> step_names() const;
  std::string final_name() const;

 protected:
  void check_component(const std::string& name, const Estimator& candidate) const override;
  void fit_canonical(const Table& X, const LabelVector& y) override;
  LabelVector predict_canonical(const Table& X) const override;
  ParamMap learner_state() const override { return components_fitted_state(); }
  void load_learner_state(const ParamMap& state) override { load_components_fitted_state(state); }

 private:
  Table transform_steps(const Table& X) const;
};

/// (SupervisedLearner)^n → SupervisedLearner.
///
/// Every member is fitted on the same data; predictions are aggregated by
/// the arithmetic mean (regressors) or by majority vote with ties going to
/// the first label in canonical order (classifiers).
class Ensemble final : public Cloneable<Ensemble, SupervisedLearner> {
 public:
  /// InvalidArgument without members; ScitypeMismatch for mixed scitypes;
  /// AggregatorMismatch for mean over classifiers or voting over regressors.
  Ensemble(std::vector<Named<SupervisedLearner>> members, const std::string& aggregator);
  static std::unique_ptr<Ensemble> from_params(const ParamMap& params);

  std::string kind() const override { return "Ensemble"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

 protected:
  void validate_params(const ParamMap& updates) const override;
  void check_component(const std::string& name, const Estimator& candidate) const override;
  void fit_canonical(const Table& X, const LabelVector& y) override;
  LabelVector predict_canonical(const Table& X) const override;
  ParamMap learner_state() const override { return components_fitted_state(); }
  void load_learner_state(const ParamMap& state) override { load_components_fitted_state(state); }

 private:
  std::string member_scitype() const;
};

/// Ordered parameter grid: key order is iteration order, the first key
/// varying slowest; values are tried in the listed order.
using ParamGrid = std::vector<std::pair<std::string, std::vector<ParamValue>>>;

/// One grid point's cross-validation outcome.
struct CvResult {
  ParamMap params;
  std::vector<double> fold_losses;
  double mean_loss = 0.0;
};

/// Grid-search tuning as a supervised learner of the inner learner's
/// scitype.
///
/// fit: for every grid point, a fresh clone of `inner` with the point's
/// parameters is cross-validated on the training data (in canonical row
/// order) with the configured splitter and metric; the point with the
/// smallest mean loss wins, ties going to the earliest point; a clone with
/// the winning parameters is then fitted on all the data and used by
/// predict. The grid is the `grid` text-list parameter, one
/// `key=<JSON array>` entry per key. The splitter is configured by
/// `splitter`, `n_splits`, `train_fraction` and `seed` (−1 for none).
class GridSearchTuner final : public Cloneable<GridSearchTuner, SupervisedLearner> {
 public:
  /// `metric` defaults to misclassification for classifiers and squared
  /// loss for regressors.
  GridSearchTuner(std::unique_ptr<SupervisedLearner> inner, const ParamGrid& grid,
                  const Splitter& splitter = Splitter::kfold(5), std::string metric = "");
  static std::unique_ptr<GridSearchTuner> from_params(const ParamMap& params);

  std::string kind() const override { return "GridSearchTuner"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;

  ParamGrid grid() const;
  Splitter splitter() const;
  LossFunction metric() const;

  /// Grid points in iteration order; EmptyGrid when some key has no values
  /// or there are no keys.
  std::vector<ParamMap> grid_points() const;

  /// Results of the last fit (NotFitted before).
  const std::vector<CvResult>& cv_results() const;
  ParamMap best_params() const;
  std::size_t best_index() const;
  const SupervisedLearner& best_estimator() const;

  static std::string encode_grid_entry(const std::string& key, const std::vector<ParamValue>& values);
  static std::pair<std::string, std::vector<ParamValue>> decode_grid_entry(const std::string& entry);

 protected:
  void validate_params(const ParamMap& updates) const override;
  void check_component(const std::string& name, const Estimator& candidate) const override;
  void fit_canonical(const Table& X, const LabelVector& y) override;
  LabelVector predict_canonical(const Table& X) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override;

 private:
  std::vector<CvResult> results_;
  std::size_t best_index_ = 0;
  std::shared_ptr<const SupervisedLearner> best_;
};

/// Forecasting → regression reduction.
///
/// The series is tabularized into sliding windows: the row for target y_t
/// has features lag_1 = y_{t−1}, …, lag_w = y_{t−w}.
/// recursive: one regressor (the `regressor` component itself) is fitted
///   on one-step targets; predict rolls forward one step at a time, feeding
///   back its own forecasts, so step j only sees values before j.
/// direct: for each offset h = 1..max_horizon a clone of the regressor is
///   fitted on targets h steps after the window; offsets beyond
///   max_horizon raise HorizonBeyondData.
/// Needs window_length + 1 (recursive) or window_length + max_horizon
/// (direct) observations.
class ReducedForecaster final : public Cloneable<ReducedForecaster, Forecaster> {
 public:
  explicit ReducedForecaster(std::unique_ptr<SupervisedLearner> regressor,
                             std::int64_t window_length = 3, const std::string& strategy = "recursive",
                             std::int64_t max_horizon = 1);
  static std::unique_ptr<ReducedForecaster> from_params(const ParamMap& params);

  std::string kind() const override { return "ReducedForecaster"; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override;
  std::size_t min_train_length() const override;

  /// Window table for targets `horizon` steps after each window of length
  /// `window_length` (features lag_1..lag_w, most recent first).
  static std::pair<Table, LabelVector> tabularize(const std::vector<double>& y,
                                                  std::size_t window_length, std::size_t horizon = 1);
  /// One-row feature table for the window ending with the last value of
  /// `history`.
  static Table window_row(const std::vector<double>& history, std::size_t window_length);

 protected:
  void validate_params(const ParamMap& updates) const override;
  void check_component(const std::string& name, const Estimator& candidate) const override;
  void fit_series(const TimeSeries& y) override;
  std::vector<double> predict_offsets(const ForecastingHorizon& fh) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override;

 private:
  bool is_direct() const { return param_as<std::string>("strategy") == "direct"; }

  std::vector<double> history_;
  std::vector<std::shared_ptr<const SupervisedLearner>> direct_;
};

/// Exposed parameter surface of a contracted kind: leaf names mapped to the
/// underlying composite's nested keys; fixed keys are not exposed.
struct ContractionSurface {
  std::string kind_name;
  std::vector<std::pair<std::string, std::string>> exposed;
  ParamMap fixed;

  const std::string* inner_key(std::string_view name) const noexcept;
  ParamMap to_inner(const ParamMap& updates) const;
};

/// Atomic supervised-learner kind produced by contract().
class ContractedLearner final : public Cloneable<ContractedLearner, SupervisedLearner> {
 public:
  ContractedLearner(std::shared_ptr<const ContractionSurface> surface,
                    std::unique_ptr<SupervisedLearner> inner);
  ContractedLearner(const ContractedLearner& other);

  std::string kind() const override { return surface_->kind_name; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override { return inner_->domain(); }
  ParamMap get_params(bool deep = true) const override;
  std::vector<ParamSpec> param_specs() const override;
  std::optional<ParamSpec> find_param_spec(std::string_view key) const override;
  bool is_composite() const noexcept override { return false; }

 protected:
  void validate_params(const ParamMap& updates) const override;
  void apply_params(const ParamMap& updates) override;
  void fit_canonical(const Table& X, const LabelVector& y) override;
  LabelVector predict_canonical(const Table& X) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override;

 private:
  std::shared_ptr<const ContractionSurface> surface_;
  std::unique_ptr<SupervisedLearner> inner_;
};

/// Atomic forecaster kind produced by contract().
class ContractedForecaster final : public Cloneable<ContractedForecaster, Forecaster> {
 public:
  ContractedForecaster(std::shared_ptr<const ContractionSurface> surface,
                       std::unique_ptr<Forecaster> inner);
  ContractedForecaster(const ContractedForecaster& other);

  std::string kind() const override { return surface_->kind_name; }
  TagMap get_tags() const override;
  DomainDescriptor domain() const override { return inner_->domain(); }
  ParamMap get_params(bool deep = true) const override;
  std::vector<ParamSpec> param_specs() const override;
  std::optional<ParamSpec> find_param_spec(std::string_view key) const override;
  bool is_composite() const noexcept override { return false; }
  std::size_t min_train_length() const override { return inner_->min_train_length(); }

 protected:
  void validate_params(const ParamMap& updates) const override;
  void apply_params(const ParamMap& updates) override;
  void fit_series(const TimeSeries& y) override;
  std::vector<double> predict_offsets(const ForecastingHorizon& fh) const override;
  ParamMap learner_state() const override;
  void load_learner_state(const ParamMap& state) override;
  void clear_learner_state() override;

 private:
  std::shared_ptr<const ContractionSurface> surface_;
  std::unique_ptr<Forecaster> inner_;
};

/// Registers `kind_name` as an atomic kind whose instances are `blueprint`
/// with `fixed` applied. Fixed parameters disappear from the new kind's
/// parameters; the remaining (non-component) parameters are exposed under
/// their last name segment, e.g. `learner__ridge` as `ridge`.
/// NameCollision for a taken kind name; AmbiguousParamFlattening when two
/// exposed parameters share a last segment; UnknownParameter or
/// DomainViolation for bad fixed values; ScitypeMismatch unless the
/// blueprint is a supervised learner or forecaster.
const KindDescriptor& contract(Registry& registry, const std::string& kind_name,
                               const Estimator& blueprint, const ParamMap& fixed);

}  // namespace scitype
