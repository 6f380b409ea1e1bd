#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scitype/data.hpp"
#include "scitype/learner.hpp"
#include "scitype/loss.hpp"
#include "scitype/persistence.hpp"

namespace scitype {

enum class TaskFlavor { Classification, Regression };
std::string_view to_string(TaskFlavor f) noexcept;
TaskFlavor task_flavor_from_string(std::string_view s);

/// Which columns are the target and the features, how predictions are
/// scored, and which label domain the target lives in.
struct SupervisedTask {
  std::string target;
  /// All columns except the target when unset.
  std::optional<std::vector<std::string>> features;
  std::string loss = "squared";
  TaskFlavor flavor = TaskFlavor::Regression;

  /// InvalidArgument when the target is listed as a feature, the loss is
  /// unknown, or the loss does not match the flavor.
  void validate() const;
  Json to_json() const;
};

enum class ForecastingVariant { FixedHorizon, SlidingWindow };
std::string_view to_string(ForecastingVariant v) noexcept;
ForecastingVariant forecasting_variant_from_string(std::string_view s);

struct ForecastingTask {
  ForecastingHorizon fh;
  ForecastingVariant variant = ForecastingVariant::FixedHorizon;
  std::string loss = "squared";

  /// EmptyHorizon; InvalidArgument for an unknown or non-regression loss.
  void validate() const;
  Json to_json() const;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  friend bool operator==(const Split&, const Split&) = default;
};

enum class SplitterKind { KFold, Holdout, TemporalHoldout };
std::string_view to_string(SplitterKind k) noexcept;

/// Resampling co-strategy.
///
/// kfold: contiguous folds of near-equal size; the first n mod k folds hold
/// one extra row; fold i is the test set of split i. With a seed, indices
/// are first permuted by Fisher–Yates driven by the generator
///   s ← 6364136223846793005·s + 1442695040888963407 (mod 2^64),
///   j = (s >> 33) mod (i + 1),   for i = n−1 … 1,
/// and each split's index lists are returned in ascending order.
/// holdout / temporal_holdout: the first ⌊train_fraction·n⌋ rows train, the
/// rest test; order is never changed.
class Splitter {
 public:
  static Splitter kfold(std::int64_t k, std::optional<std::uint64_t> seed = std::nullopt);
  static Splitter holdout(double train_fraction);
  static Splitter temporal_holdout(double train_fraction);
  /// Builds from a kind name and parameters {k, seed} or {train_fraction}.
  /// InvalidArgument, UnknownParameter, DomainViolation.
  static Splitter from_spec(std::string_view kind, const ParamMap& params);

  SplitterKind kind() const noexcept { return kind_; }
  std::int64_t k() const noexcept { return k_; }
  double train_fraction() const noexcept { return train_fraction_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  bool is_temporal() const noexcept { return kind_ != SplitterKind::KFold; }

  /// TooFewSamples when n is too small for the scheme.
  std::vector<Split> split(std::size_t n) const;

  Json to_json() const;

 private:
  Splitter() = default;

  SplitterKind kind_ = SplitterKind::KFold;
  std::int64_t k_ = 5;
  double train_fraction_ = 0.75;
  std::optional<std::uint64_t> seed_;
};

/// Mean test loss of a fresh unfitted clone of `learner` on every split.
/// `learner` itself is never modified.
std::vector<double> cross_validate(const SupervisedLearner& learner, const Table& X,
                                   const LabelVector& y, const Splitter& splitter,
                                   const LossFunction& loss);

struct EvaluationReport {
  std::string estimator_kind;
  ParamMap estimator_params;
  Json task;
  std::vector<double> per_fold_losses;
  double mean_loss = 0.0;
  std::size_t n_splits = 0;

  /// {estimator, task, per_fold_losses, mean_loss, n_splits}.
  Json to_json() const;
};

/// Splits a table into the task's feature table and target vector.
/// MissingTarget; SchemaMismatch for unknown feature columns;
/// ScitypeMismatch for a categorical regression target.
std::pair<Table, LabelVector> task_data(const SupervisedTask& task, const Table& data);

/// Resampled generalization-loss estimate. `estimator` must be a supervised
/// learner (ScitypeMismatch otherwise) and is never modified.
EvaluationReport evaluate_supervised(const Estimator& estimator, const SupervisedTask& task,
                                     const Table& data, const Splitter& splitter);

/// Fixed-horizon evaluation: fit on the first τ = ⌊train_fraction·n⌋
/// observations, forecast task.fh, score against y at τ + h.
/// HorizonBeyondData; TooFewSamples when τ is 0.
EvaluationReport evaluate_forecaster(const Estimator& estimator, const ForecastingTask& task,
                                     const TimeSeries& y, double train_fraction);

}  // namespace scitype
