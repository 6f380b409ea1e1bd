#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scitype/data.hpp"
#include "scitype/estimator.hpp"

namespace scitype {

/// Standard tag set every estimator kind carries.
TagMap estimator_tags(std::string scitype, bool deterministic, ParamMap extra = {});

/// fit : (X × Y)^N → model, predict : X × model → Y.
///
/// fit() validates the inputs, puts the columns into name order and the rows
/// into canonical order (see canonical_row_order), then hands the result to
/// fit_canonical(). Row and column order of the training data therefore
/// never influence the fitted model. predict() selects the fit-time columns
/// by name, so column order at predict time does not matter either.
class SupervisedLearner : public Estimator {
 public:
  virtual SupervisedLearner& fit(const Table& X, const LabelVector& y);
  virtual LabelVector predict(const Table& X) const;

  /// Column names and scitypes seen at fit, in name order.
  const TableSchema& fitted_schema() const;
  /// Finite for classifiers, Real for regressors.
  LabelDomain target_domain() const;
  bool is_classifier() const { return scitype() == "supervised_classifier"; }

 protected:
  virtual void fit_canonical(const Table& X, const LabelVector& y) = 0;
  virtual LabelVector predict_canonical(const Table& X) const = 0;

  virtual ParamMap learner_state() const = 0;
  virtual void load_learner_state(const ParamMap& state) = 0;
  virtual void clear_learner_state() {}

  ParamMap fitted_state() const final;
  void load_fitted_state(const ParamMap& fitted) final;
  void clear_fitted_state() final;

  /// Throws SchemaMismatch unless X has exactly the fit-time columns.
  Table align_to_schema(const Table& X) const;
  /// Fit-time schema without the fitted-status guard (for state loading).
  const TableSchema& stored_schema() const noexcept { return schema_; }

 private:
  TableSchema schema_;
};

/// fit : X → model, transform : X × model → U.
class Transformer : public Estimator {
 public:
  Transformer& fit(const Table& X) { return fit_impl(X, nullptr); }
  /// `y` is accepted for interface uniformity; kinds may ignore it.
  Transformer& fit(const Table& X, const LabelVector& y) { return fit_impl(X, &y); }
  /// Output columns keep the caller's order when the kind preserves names.
  virtual Table transform(const Table& X) const;
  Table fit_transform(const Table& X);
  Table fit_transform(const Table& X, const LabelVector& y);

  const TableSchema& fitted_schema() const;

 protected:
  virtual Transformer& fit_impl(const Table& X, const LabelVector* y);
  virtual void fit_canonical(const Table& X, const LabelVector* y) = 0;
  virtual Table transform_canonical(const Table& X) const = 0;

  virtual ParamMap learner_state() const = 0;
  virtual void load_learner_state(const ParamMap& state) = 0;
  virtual void clear_learner_state() {}

  ParamMap fitted_state() const final;
  void load_fitted_state(const ParamMap& fitted) final;
  void clear_fitted_state() final;

 private:
  TableSchema schema_;
};

/// fit : Z → model, predict : T × model → Z.
///
/// Forecasts are indexed at cutoff + offset, where cutoff is the last index
/// of the training series. Unlike tabular learners, observation order is
/// meaningful and preserved.
class Forecaster : public Estimator {
 public:
  virtual Forecaster& fit(const TimeSeries& y);
  virtual TimeSeries predict(const ForecastingHorizon& fh) const;

  std::int64_t cutoff() const;
  /// Shortest series fit() accepts. Defaults to the "min_train_length" tag;
  /// kinds whose minimum depends on hyper-parameters override it.
  virtual std::size_t min_train_length() const;

 protected:
  virtual void fit_series(const TimeSeries& y) = 0;
  /// One value per offset of a nonempty horizon.
  virtual std::vector<double> predict_offsets(const ForecastingHorizon& fh) const = 0;

  virtual ParamMap learner_state() const = 0;
  virtual void load_learner_state(const ParamMap& state) = 0;
  virtual void clear_learner_state() {}

  ParamMap fitted_state() const final;
  void load_fitted_state(const ParamMap& fitted) final;
  void clear_fitted_state() final;

  /// Cutoff without the fitted-status guard (for state loading).
  std::int64_t stored_cutoff() const noexcept { return cutoff_; }

 private:
  std::int64_t cutoff_ = 0;
};

}  // namespace scitype
