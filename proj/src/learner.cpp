#include "scitype/learner.hpp"

#include <algorithm>

namespace scitype {

TagMap estimator_tags(std::string scitype, bool deterministic, ParamMap extra) {
  ParamMap tags{{"scitype", std::move(scitype)},
                {"deterministic", deterministic},
                {"handles_missing", false},
                {"capability_update", false},
                {"is_composite", false}};
  tags.merge(extra);
  return TagMap(std::move(tags));
}

namespace {

std::vector<std::string> schema_scitype_names(const TableSchema& s) {
  std::vector<std::string> out;
  for (auto t : s.scitypes) out.emplace_back(to_string(t));
  return out;
}

TableSchema schema_from_state(const ParamMap& state) {
  TableSchema s;
  s.names = state.at("feature_names").as<std::vector<std::string>>();
  for (const auto& t : state.at("feature_scitypes").as<std::vector<std::string>>()) {
    s.scitypes.push_back(column_scitype_from_string(t));
  }
  if (s.names.size() != s.scitypes.size()) {
    throw Error(ErrorCode::SerializationError, "feature_names and feature_scitypes differ in length");
  }
  return s;
}

ParamMap without_schema(const ParamMap& fitted) {
  ParamMap out = fitted;
  out.erase("feature_names");
  out.erase("feature_scitypes");
  return out;
}

// Columns sorted by name, checked against the kind's accepted scitypes.
Table name_ordered(const Table& X, const TagMap& tags) {
  std::vector<std::string> names = X.names();
  std::sort(names.begin(), names.end());
  if (const auto* accepted = tags.find("feature_scitypes")) {
    const auto& ok = accepted->as<std::vector<std::string>>();
    for (const auto& c : X.columns()) {
      if (std::find(ok.begin(), ok.end(), to_string(c.scitype())) == ok.end()) {
        throw Error(ErrorCode::ScitypeMismatch, "column '" + c.name() + "' is " +
                                                    std::string(to_string(c.scitype())) +
                                                    ", which this kind does not accept");
      }
    }
  }
  return X.select(names);
}

Table align(const Table& X, const TableSchema& schema) {
  if (X.n_cols() != schema.names.size()) {
    throw Error(ErrorCode::SchemaMismatch, "expected " + std::to_string(schema.names.size()) +
                                               " columns, got " + std::to_string(X.n_cols()));
  }
  for (std::size_t j = 0; j < schema.names.size(); ++j) {
    const Column* c = X.find(schema.names[j]);
    if (c == nullptr) throw Error(ErrorCode::SchemaMismatch, "missing column '" + schema.names[j] + "'");
    if (c->scitype() != schema.scitypes[j]) {
      throw Error(ErrorCode::SchemaMismatch, "column '" + schema.names[j] + "' changed scitype");
    }
  }
  return X.select(schema.names);
}

}  // namespace

// ---------------------------------------------------------------- SupervisedLearner

SupervisedLearner& SupervisedLearner::fit(const Table& X, const LabelVector& y) {
  if (X.n_rows() == 0) throw Error(ErrorCode::EmptyTrainingSet, kind() + ": no training rows");
  if (y.size() != X.n_rows()) {
    throw Error(ErrorCode::LengthMismatch, kind() + ": " + std::to_string(X.n_rows()) +
                                               " rows but " + std::to_string(y.size()) + " labels");
  }
  const bool classifier = is_classifier();
  if (classifier && y.domain() != LabelDomain::Finite) {
    throw Error(ErrorCode::ScitypeMismatch, "target: a classifier needs a finite label set");
  }
  if (!classifier && (y.domain() != LabelDomain::Real || !y.is_numeric())) {
    throw Error(ErrorCode::ScitypeMismatch, "target: a regressor needs a real-valued target");
  }
  Table ordered = name_ordered(X, get_tags());
  const auto rows = canonical_row_order(ordered, &y);
  const Table Xc = ordered.take_rows(rows);
  const LabelVector yc = y.take(rows);

  reset();
  try {
    fit_canonical(Xc, yc);
  } catch (...) {
    reset();
    throw;
  }
  schema_ = ordered.schema();
  mark_fitted();
  return *this;
}

LabelVector SupervisedLearner::predict(const Table& X) const {
  require_fitted();
  LabelVector out = predict_canonical(align_to_schema(X));
  if (out.size() != X.n_rows()) {
    throw Error(ErrorCode::LengthMismatch, kind() + " returned the wrong number of predictions");
  }
  return out;
}

Table SupervisedLearner::align_to_schema(const Table& X) const { return align(X, schema_); }

const TableSchema& SupervisedLearner::fitted_schema() const {
  require_fitted();
  return schema_;
}

LabelDomain SupervisedLearner::target_domain() const {
  return is_classifier() ? LabelDomain::Finite : LabelDomain::Real;
}

ParamMap SupervisedLearner::fitted_state() const {
  ParamMap out{{"feature_names", schema_.names},
               {"feature_scitypes", schema_scitype_names(schema_)}};
  out.merge(learner_state());
  return out;
}

void SupervisedLearner::load_fitted_state(const ParamMap& fitted) {
  schema_ = schema_from_state(fitted);
  load_learner_state(without_schema(fitted));
}

void SupervisedLearner::clear_fitted_state() {
  schema_ = {};
  clear_learner_state();
}

// ---------------------------------------------------------------- Transformer

Transformer& Transformer::fit_impl(const Table& X, const LabelVector* y) {
  if (X.n_rows() == 0) throw Error(ErrorCode::EmptyTrainingSet, kind() + ": no training rows");
  if (y != nullptr && y->size() != X.n_rows()) {
    throw Error(ErrorCode::LengthMismatch, kind() + ": label count differs from row count");
  }
  Table ordered = name_ordered(X, get_tags());
  const auto rows = canonical_row_order(ordered, y);
  const Table Xc = ordered.take_rows(rows);
  std::optional<LabelVector> yc;
  if (y != nullptr) yc = y->take(rows);

  reset();
  try {
    fit_canonical(Xc, yc ? &*yc : nullptr);
  } catch (...) {
    reset();
    throw;
  }
  schema_ = ordered.schema();
  mark_fitted();
  return *this;
}

Table Transformer::transform(const Table& X) const {
  require_fitted();
  Table out = transform_canonical(align(X, schema_));
  if (out.n_rows() != X.n_rows()) {
    throw Error(ErrorCode::LengthMismatch, kind() + " changed the number of rows");
  }
  std::vector<std::string> out_names = out.names(), in_names = X.names();
  std::sort(out_names.begin(), out_names.end());
  std::vector<std::string> sorted_in = in_names;
  std::sort(sorted_in.begin(), sorted_in.end());
  if (out_names == sorted_in) return out.select(in_names);
  return out;
}

Table Transformer::fit_transform(const Table& X) {
  fit(X);
  return transform(X);
}

Table Transformer::fit_transform(const Table& X, const LabelVector& y) {
  fit(X, y);
  return transform(X);
}

const TableSchema& Transformer::fitted_schema() const {
  require_fitted();
  return schema_;
}

ParamMap Transformer::fitted_state() const {
  ParamMap out{{"feature_names", schema_.names},
               {"feature_scitypes", schema_scitype_names(schema_)}};
  out.merge(learner_state());
  return out;
}

void Transformer::load_fitted_state(const ParamMap& fitted) {
  schema_ = schema_from_state(fitted);
  load_learner_state(without_schema(fitted));
}

void Transformer::clear_fitted_state() {
  schema_ = {};
  clear_learner_state();
}

// ---------------------------------------------------------------- Forecaster

Forecaster& Forecaster::fit(const TimeSeries& y) {
  const std::size_t need = min_train_length();
  if (y.size() < need) {
    throw Error(ErrorCode::TooShort, kind() + " needs at least " + std::to_string(need) +
                                         " observations, got " + std::to_string(y.size()));
  }
  reset();
  try {
    fit_series(y);
  } catch (...) {
    reset();
    throw;
  }
  cutoff_ = y.index().back();
  mark_fitted();
  return *this;
}

TimeSeries Forecaster::predict(const ForecastingHorizon& fh) const {
  require_fitted();
  if (fh.empty()) throw Error(ErrorCode::EmptyHorizon, "forecasting horizon is empty");
  std::vector<double> values = predict_offsets(fh);
  if (values.size() != fh.size()) {
    throw Error(ErrorCode::LengthMismatch, kind() + " returned the wrong number of forecasts");
  }
  std::vector<std::int64_t> index;
  index.reserve(fh.size());
  for (auto h : fh.offsets()) index.push_back(cutoff_ + h);
  return TimeSeries(std::move(index), std::move(values));
}

std::int64_t Forecaster::cutoff() const {
  require_fitted();
  return cutoff_;
}

std::size_t Forecaster::min_train_length() const {
  const auto v = get_tags()["min_train_length"].as<std::int64_t>();
  return static_cast<std::size_t>(std::max<std::int64_t>(v, 1));
}

ParamMap Forecaster::fitted_state() const {
  ParamMap out{{"cutoff", cutoff_}};
  out.merge(learner_state());
  return out;
}

void Forecaster::load_fitted_state(const ParamMap& fitted) {
  cutoff_ = fitted.at("cutoff").as<std::int64_t>();
  ParamMap rest = fitted;
  rest.erase("cutoff");
  load_learner_state(rest);
}

void Forecaster::clear_fitted_state() {
  cutoff_ = 0;
  clear_learner_state();
}

}  // namespace scitype
