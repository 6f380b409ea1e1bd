#include "scitype/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scitype {

std::string_view to_string(TaskFlavor f) noexcept {
  return f == TaskFlavor::Classification ? "classification" : "regression";
}

TaskFlavor task_flavor_from_string(std::string_view s) {
  if (s == "classification") return TaskFlavor::Classification;
  if (s == "regression") return TaskFlavor::Regression;
  throw Error(ErrorCode::InvalidArgument,
              "unknown flavor '" + std::string(s) + "' (expected classification or regression)");
}

std::string_view to_string(ForecastingVariant v) noexcept {
  return v == ForecastingVariant::FixedHorizon ? "fixed_horizon" : "sliding_window";
}

ForecastingVariant forecasting_variant_from_string(std::string_view s) {
  if (s == "fixed_horizon") return ForecastingVariant::FixedHorizon;
  if (s == "sliding_window") return ForecastingVariant::SlidingWindow;
  throw Error(ErrorCode::InvalidArgument,
              "unknown variant '" + std::string(s) + "' (expected fixed_horizon or sliding_window)");
}

std::string_view to_string(SplitterKind k) noexcept {
  switch (k) {
    case SplitterKind::KFold: return "kfold";
    case SplitterKind::Holdout: return "holdout";
    case SplitterKind::TemporalHoldout: return "temporal_holdout";
  }
  return "kfold";
}

// ---------------------------------------------------------------- tasks

void SupervisedTask::validate() const {
  if (target.empty()) throw Error(ErrorCode::InvalidArgument, "task target is empty");
  if (features && std::find(features->begin(), features->end(), target) != features->end()) {
    throw Error(ErrorCode::InvalidArgument, "target '" + target + "' is also listed as a feature");
  }
  const auto l = LossFunction::by_id(loss);
  const bool classification = flavor == TaskFlavor::Classification;
  if ((l.task() == LossTask::Classification) != classification) {
    throw Error(ErrorCode::InvalidArgument, "loss '" + loss + "' does not fit a " +
                                                std::string(to_string(flavor)) + " task");
  }
}

Json SupervisedTask::to_json() const {
  Json j = Json::object();
  j["type"] = "supervised";
  j["target"] = target;
  j["features"] = features ? Json(*features) : Json(nullptr);
  j["loss"] = loss;
  j["flavor"] = std::string(to_string(flavor));
  return j;
}

void ForecastingTask::validate() const {
  if (fh.empty()) throw Error(ErrorCode::EmptyHorizon, "forecasting task needs a nonempty fh");
  if (LossFunction::by_id(loss).task() != LossTask::Regression) {
    throw Error(ErrorCode::InvalidArgument, "loss '" + loss + "' does not fit a forecasting task");
  }
}

Json ForecastingTask::to_json() const {
  Json j = Json::object();
  j["type"] = "forecasting";
  j["fh"] = fh.offsets();
  j["variant"] = std::string(to_string(variant));
  j["loss"] = loss;
  return j;
}

// ---------------------------------------------------------------- splitters

Splitter Splitter::kfold(std::int64_t k, std::optional<std::uint64_t> seed) {
  if (k < 2) throw Error(ErrorCode::DomainViolation, "kfold needs k >= 2, got " + std::to_string(k));
  Splitter s;
  s.kind_ = SplitterKind::KFold;
  s.k_ = k;
  s.seed_ = seed;
  return s;
}

namespace {

void check_fraction(double f) {
  if (!(f > 0.0 && f < 1.0)) {
    throw Error(ErrorCode::DomainViolation,
                "train_fraction must lie in (0, 1), got " + ParamValue(f).render());
  }
}

}  // namespace

Splitter Splitter::holdout(double train_fraction) {
  check_fraction(train_fraction);
  Splitter s;
  s.kind_ = SplitterKind::Holdout;
  s.train_fraction_ = train_fraction;
  return s;
}

Splitter Splitter::temporal_holdout(double train_fraction) {
  Splitter s = holdout(train_fraction);
  s.kind_ = SplitterKind::TemporalHoldout;
  return s;
}

Splitter Splitter::from_spec(std::string_view kind, const ParamMap& params) {
  auto only = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [k, v] : params) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw Error(ErrorCode::UnknownParameter, "splitter " + std::string(kind) + ": " + k);
      }
    }
  };
  if (kind == "kfold") {
    only({"k", "seed"});
    std::int64_t k = 5;
    if (const auto* v = params.find("k")) k = v->as<std::int64_t>();
    std::optional<std::uint64_t> seed;
    if (const auto* v = params.find("seed")) {
      const auto s = v->as<std::int64_t>();
      if (s < 0) throw Error(ErrorCode::DomainViolation, "seed must be non-negative");
      seed = static_cast<std::uint64_t>(s);
    }
    return kfold(k, seed);
  }
  if (kind == "holdout" || kind == "temporal_holdout") {
    only({"train_fraction"});
    double f = 0.75;
    if (const auto* v = params.find("train_fraction")) f = v->as_real();
    return kind == "holdout" ? holdout(f) : temporal_holdout(f);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown splitter kind '" + std::string(kind) +
                                              "' (expected kfold, holdout or temporal_holdout)");
}

std::vector<Split> Splitter::split(std::size_t n) const {
  std::vector<Split> out;
  if (kind_ == SplitterKind::KFold) {
    const auto k = static_cast<std::size_t>(k_);
    if (n < k) {
      throw Error(ErrorCode::TooFewSamples, "kfold(k=" + std::to_string(k) + ") needs at least " +
                                                std::to_string(k) + " rows, got " + std::to_string(n));
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (seed_) {
      std::uint64_t s = *seed_;
      for (std::size_t i = n; i-- > 1;) {
        s = 6364136223846793005ULL * s + 1442695040888963407ULL;
        const auto j = static_cast<std::size_t>((s >> 33) % (i + 1));
        std::swap(perm[i], perm[j]);
      }
    }
    const std::size_t base = n / k, extra = n % k;
    std::size_t start = 0;
    for (std::size_t f = 0; f < k; ++f) {
      const std::size_t size = base + (f < extra ? 1 : 0);
      Split s;
      for (std::size_t i = 0; i < n; ++i) {
        (i >= start && i < start + size ? s.test : s.train).push_back(perm[i]);
      }
      std::sort(s.train.begin(), s.train.end());
      std::sort(s.test.begin(), s.test.end());
      out.push_back(std::move(s));
      start += size;
    }
    return out;
  }
  const auto n_train = static_cast<std::size_t>(std::floor(train_fraction_ * static_cast<double>(n)));
  if (n_train == 0 || n_train >= n) {
    throw Error(ErrorCode::TooFewSamples, std::string(to_string(kind_)) + "(" +
                                              ParamValue(train_fraction_).render() + ") on " +
                                              std::to_string(n) + " rows leaves an empty side");
  }
  Split s;
  for (std::size_t i = 0; i < n; ++i) (i < n_train ? s.train : s.test).push_back(i);
  out.push_back(std::move(s));
  return out;
}

Json Splitter::to_json() const {
  Json j = Json::object();
  j["kind"] = std::string(to_string(kind_));
  Json params = Json::object();
  if (kind_ == SplitterKind::KFold) {
    params["k"] = k_;
    if (seed_) params["seed"] = *seed_;
  } else {
    params["train_fraction"] = train_fraction_;
  }
  j["params"] = std::move(params);
  return j;
}

// ---------------------------------------------------------------- evaluation

std::vector<double> cross_validate(const SupervisedLearner& learner, const Table& X,
                                   const LabelVector& y, const Splitter& splitter,
                                   const LossFunction& loss) {
  if (X.n_rows() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "table and target differ in length");
  }
  std::vector<double> losses;
  for (const auto& s : splitter.split(X.n_rows())) {
    auto model = clone_as<SupervisedLearner>(learner);
    model->fit(X.take_rows(s.train), y.take(s.train));
    losses.push_back(loss.mean(model->predict(X.take_rows(s.test)), y.take(s.test)));
  }
  return losses;
}

Json EvaluationReport::to_json() const {
  Json j = Json::object();
  Json est = Json::object();
  est["kind"] = estimator_kind;
  est["params"] = params_to_json(estimator_params);
  j["estimator"] = std::move(est);
  j["task"] = task;
  j["per_fold_losses"] = per_fold_losses;
  j["mean_loss"] = mean_loss;
  j["n_splits"] = n_splits;
  return j;
}

std::pair<Table, LabelVector> task_data(const SupervisedTask& task, const Table& data) {
  task.validate();
  const Column* target = data.find(task.target);
  if (target == nullptr) {
    throw Error(ErrorCode::MissingTarget, "target column '" + task.target + "' is not in the data");
  }
  LabelVector y;
  if (task.flavor == TaskFlavor::Classification) {
    y = target->scitype() == ColumnScitype::Numeric
            ? LabelVector::classes(target->numeric_values())
            : LabelVector::classes(target->categorical_values());
  } else {
    if (target->scitype() != ColumnScitype::Numeric) {
      throw Error(ErrorCode::ScitypeMismatch,
                  "target: regression needs a numeric column, '" + task.target + "' is categorical");
    }
    y = LabelVector::real(target->numeric_values());
  }
  Table X = task.features ? data.select(*task.features) : data.drop(task.target);
  return {std::move(X), std::move(y)};
}

namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

EvaluationReport evaluate_supervised(const Estimator& estimator, const SupervisedTask& task,
                                     const Table& data, const Splitter& splitter) {
  const auto* learner = dynamic_cast<const SupervisedLearner*>(&estimator);
  if (learner == nullptr) {
    throw Error(ErrorCode::ScitypeMismatch,
                estimator.kind() + " is a " + estimator.scitype() + ", not a supervised learner");
  }
  auto [X, y] = task_data(task, data);
  if ((task.flavor == TaskFlavor::Classification) != learner->is_classifier()) {
    throw Error(ErrorCode::ScitypeMismatch, estimator.kind() + " (" + estimator.scitype() +
                                                ") does not solve a " +
                                                std::string(to_string(task.flavor)) + " task");
  }
  EvaluationReport r;
  r.estimator_kind = estimator.kind();
  r.estimator_params = estimator.get_params(false);
  r.task = task.to_json();
  r.per_fold_losses = cross_validate(*learner, X, y, splitter, LossFunction::by_id(task.loss));
  r.n_splits = r.per_fold_losses.size();
  r.mean_loss = mean_of(r.per_fold_losses);
  return r;
}

EvaluationReport evaluate_forecaster(const Estimator& estimator, const ForecastingTask& task,
                                     const TimeSeries& y, double train_fraction) {
  const auto* forecaster = dynamic_cast<const Forecaster*>(&estimator);
  if (forecaster == nullptr) {
    throw Error(ErrorCode::ScitypeMismatch,
                estimator.kind() + " is a " + estimator.scitype() + ", not a forecaster");
  }
  task.validate();
  check_fraction(train_fraction);
  const std::size_t n = y.size();
  const auto tau = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(n)));
  if (tau == 0) {
    throw Error(ErrorCode::TooFewSamples, "no training observations before the cutoff");
  }
  const auto h_max = static_cast<std::size_t>(task.fh.max());
  if (tau + h_max > n) {
    throw Error(ErrorCode::HorizonBeyondData,
                "fh reaches offset " + std::to_string(h_max) + " but only " +
                    std::to_string(n - tau) + " observations follow the cutoff");
  }
  auto model = clone_as<Forecaster>(*forecaster);
  model->fit(y.head(tau));
  const TimeSeries pred = model->predict(task.fh);
  std::vector<double> actual;
  for (auto h : task.fh.offsets()) actual.push_back(y.values()[tau - 1 + static_cast<std::size_t>(h)]);

  EvaluationReport r;
  r.estimator_kind = estimator.kind();
  r.estimator_params = estimator.get_params(false);
  r.task = task.to_json();
  r.per_fold_losses = {LossFunction::by_id(task.loss).mean(pred.values(), actual)};
  r.n_splits = 1;
  r.mean_loss = r.per_fold_losses.front();
  return r;
}

}  // namespace scitype
