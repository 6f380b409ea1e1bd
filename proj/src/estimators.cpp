#include "scitype/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace scitype {

namespace {

const std::vector<std::string> kNumericOnly{"numeric"};
const std::vector<std::string> kAnyColumns{"numeric", "categorical"};

ParamValue labels_as_param(const std::vector<ParamValue>& labels) {
  if (!labels.empty() && labels.front().is<std::string>()) {
    std::vector<std::string> out;
    for (const auto& l : labels) out.push_back(l.as<std::string>());
    return out;
  }
  std::vector<double> out;
  for (const auto& l : labels) out.push_back(l.as_real());
  return out;
}

std::vector<ParamValue> labels_from_param(const ParamValue& v) {
  std::vector<ParamValue> out;
  if (v.is<std::vector<std::string>>()) {
    for (const auto& s : v.as<std::vector<std::string>>()) out.emplace_back(s);
  } else {
    for (double d : v.as<std::vector<double>>()) out.emplace_back(d);
  }
  return out;
}

// Most frequent label; ties go to the canonically smallest label.
template <class T>
T majority_of(const std::vector<T>& values) {
  std::map<T, std::size_t> counts;
  for (const auto& v : values) ++counts[v];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

}  // namespace

DomainDescriptor real_line_domain() { return {Domain::reals(), std::nullopt}; }

DomainDescriptor label_set_domain(std::optional<std::vector<ParamValue>> labels) {
  if (!labels) {
    return {Domain("finite label set (determined at fit)",
                   [](const ParamValue& v) {
                     return v.is<std::string>() || v.is<double>() || v.is<std::int64_t>();
                   }),
            std::nullopt};
  }
  std::string desc = "{";
  for (std::size_t i = 0; i < labels->size(); ++i) {
    desc += (i ? ", " : "") + (*labels)[i].render();
  }
  desc += "}";
  auto set = *labels;
  return {Domain(desc,
                 [set](const ParamValue& v) {
                   return std::any_of(set.begin(), set.end(), [&](const ParamValue& l) {
                     if (l.is<std::string>() || v.is<std::string>()) return l == v;
                     return l.as_real() == v.as_real();
                   });
                 }),
          std::move(labels)};
}

// ---------------------------------------------------------------- MajorityDummyClassifier

TagMap MajorityDummyClassifier::get_tags() const {
  return estimator_tags("supervised_classifier", true,
                        {{"feature_scitypes", kAnyColumns}, {"handles_multiclass", true}});
}

DomainDescriptor MajorityDummyClassifier::domain() const {
  if (!is_fitted()) return label_set_domain(std::nullopt);
  return label_set_domain(labels_);
}

void MajorityDummyClassifier::fit_canonical(const Table&, const LabelVector& y) {
  if (y.is_numeric()) {
    majority_ = ParamValue(majority_of(y.numeric()));
  } else {
    majority_ = ParamValue(majority_of(y.text()));
  }
  labels_ = y.distinct();
}

LabelVector MajorityDummyClassifier::predict_canonical(const Table& X) const {
  return LabelVector::filled(*majority_, X.n_rows(), LabelDomain::Finite);
}

ParamMap MajorityDummyClassifier::learner_state() const {
  return {{"majority_class", *majority_}, {"classes", labels_as_param(labels_)}};
}

void MajorityDummyClassifier::load_learner_state(const ParamMap& state) {
  majority_ = state.at("majority_class");
  labels_ = labels_from_param(state.at("classes"));
}

void MajorityDummyClassifier::clear_learner_state() {
  majority_.reset();
  labels_.clear();
}

// ---------------------------------------------------------------- NearestNeighborClassifier

NearestNeighborClassifier::NearestNeighborClassifier(std::int64_t k) {
  declare_param("k", ParamType::Integer, Domain::integers_at_least(1), k);
}

TagMap NearestNeighborClassifier::get_tags() const {
  return estimator_tags("supervised_classifier", true,
                        {{"feature_scitypes", kNumericOnly}, {"handles_multiclass", true}});
}

DomainDescriptor NearestNeighborClassifier::domain() const {
  if (!is_fitted()) return label_set_domain(std::nullopt);
  return label_set_domain(labels_->distinct());
}

void NearestNeighborClassifier::fit_canonical(const Table& X, const LabelVector& y) {
  train_ = X.numeric_matrix();
  labels_ = y;
}

LabelVector NearestNeighborClassifier::predict_canonical(const Table& X) const {
  const Eigen::MatrixXd query = X.numeric_matrix();
  const auto n_train = static_cast<std::size_t>(train_.rows());
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(param_as<std::int64_t>("k")), n_train);

  std::vector<double> dist(n_train);
  std::vector<std::size_t> order(n_train);
  std::vector<std::size_t> winners;
  winners.reserve(static_cast<std::size_t>(query.rows()));

  for (Eigen::Index r = 0; r < query.rows(); ++r) {
    for (std::size_t i = 0; i < n_train; ++i) {
      double d = 0.0;
      for (Eigen::Index j = 0; j < query.cols(); ++j) {
        const double diff = query(r, j) - train_(static_cast<Eigen::Index>(i), j);
        d += diff * diff;
      }
      dist[i] = d;
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

    // Vote; ties go to the canonically smallest label.
    std::size_t best = order.front();
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const ParamValue cand = labels_->at(order[i]);
      std::size_t count = 0;
      for (std::size_t m = 0; m < k; ++m) count += labels_->at(order[m]) == cand ? 1 : 0;
      const ParamValue current = labels_->at(best);
      if (count > best_count || (count == best_count && label_less(cand, current))) {
        best = order[i];
        best_count = count;
      }
    }
    winners.push_back(best);
  }
  return labels_->take(winners);
}

ParamMap NearestNeighborClassifier::learner_state() const {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(train_.size()));
  for (Eigen::Index r = 0; r < train_.rows(); ++r) {
    for (Eigen::Index c = 0; c < train_.cols(); ++c) flat.push_back(train_(r, c));
  }
  ParamValue labels = labels_->is_numeric() ? ParamValue(labels_->numeric())
                                            : ParamValue(labels_->text());
  return {{"train_features", std::move(flat)}, {"train_labels", std::move(labels)}};
}

void NearestNeighborClassifier::load_learner_state(const ParamMap& state) {
  const auto& labels = state.at("train_labels");
  labels_ = labels.is<std::vector<std::string>>()
                ? LabelVector::classes(labels.as<std::vector<std::string>>())
                : LabelVector::classes(labels.as<std::vector<double>>());
  const auto& flat = state.at("train_features").as<std::vector<double>>();
  const auto n = static_cast<Eigen::Index>(labels_->size());
  if (n == 0 || flat.size() % static_cast<std::size_t>(n) != 0) {
    throw Error(ErrorCode::SerializationError, "train_features does not match train_labels");
  }
  const auto p = static_cast<Eigen::Index>(flat.size()) / n;
  train_.resize(n, p);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < p; ++c) train_(r, c) = flat[static_cast<std::size_t>(r * p + c)];
  }
}

void NearestNeighborClassifier::clear_learner_state() {
  train_.resize(0, 0);
  labels_.reset();
}

// ---------------------------------------------------------------- MeanRegressor

TagMap MeanRegressor::get_tags() const {
  return estimator_tags("supervised_regressor", true, {{"feature_scitypes", kAnyColumns}});
}

DomainDescriptor MeanRegressor::domain() const { return real_line_domain(); }

void MeanRegressor::fit_canonical(const Table&, const LabelVector& y) {
  const auto& v = y.numeric();
  mean_ = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

LabelVector MeanRegressor::predict_canonical(const Table& X) const {
  return LabelVector::real(std::vector<double>(X.n_rows(), mean_));
}

ParamMap MeanRegressor::learner_state() const { return {{"mean", mean_}}; }

void MeanRegressor::load_learner_state(const ParamMap& state) {
  mean_ = state.at("mean").as_real();
}

// ---------------------------------------------------------------- LinearRegressor

LinearRegressor::LinearRegressor() {
  declare_param("fit_intercept", ParamType::Boolean, Domain::booleans(), true);
  declare_param("ridge", ParamType::Real, Domain::non_negative_reals(), 0.0);
}

TagMap LinearRegressor::get_tags() const {
  return estimator_tags("supervised_regressor", true, {{"feature_scitypes", kNumericOnly}});
}

DomainDescriptor LinearRegressor::domain() const { return real_line_domain(); }

double LinearRegressor::intercept() const {
  require_fitted();
  return intercept_;
}

const Eigen::VectorXd& LinearRegressor::coefficients() const {
  require_fitted();
  return coef_;
}

void LinearRegressor::fit_canonical(const Table& X, const LabelVector& y) {
  const bool with_intercept = param_as<bool>("fit_intercept");
  const double ridge = real_param("ridge");
  const Eigen::MatrixXd features = X.numeric_matrix();
  const Eigen::Index n = features.rows();
  const Eigen::Index offset = with_intercept ? 1 : 0;
  const Eigen::Index p = features.cols() + offset;

  Eigen::MatrixXd design(n, p);
  if (with_intercept) design.col(0).setOnes();
  design.rightCols(features.cols()) = features;
  const Eigen::VectorXd target =
      Eigen::Map<const Eigen::VectorXd>(y.numeric().data(), static_cast<Eigen::Index>(y.size()));

  Eigen::MatrixXd gram = design.transpose() * design;
  const Eigen::VectorXd moment = design.transpose() * target;
  for (Eigen::Index j = offset; j < p; ++j) gram(j, j) += ridge;
  if (p > 0 && Eigen::FullPivLU<Eigen::MatrixXd>(gram).rank() < p) {
    gram.diagonal().array() += kRankDeficiencyRidge;
  }

  Eigen::VectorXd beta = p > 0 ? Eigen::VectorXd(gram.ldlt().solve(moment)) : Eigen::VectorXd();
  intercept_ = with_intercept ? beta(0) : 0.0;
  coef_ = beta.tail(features.cols());
}

LabelVector LinearRegressor::predict_canonical(const Table& X) const {
  const Eigen::VectorXd pred = (X.numeric_matrix() * coef_).array() + intercept_;
  return LabelVector::real(std::vector<double>(pred.data(), pred.data() + pred.size()));
}

ParamMap LinearRegressor::learner_state() const {
  return {{"intercept", intercept_},
          {"coef", std::vector<double>(coef_.data(), coef_.data() + coef_.size())}};
}

void LinearRegressor::load_learner_state(const ParamMap& state) {
  intercept_ = state.at("intercept").as_real();
  const auto& c = state.at("coef").as<std::vector<double>>();
  coef_ = Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size()));
}

void LinearRegressor::clear_learner_state() {
  intercept_ = 0.0;
  coef_.resize(0);
}

// ---------------------------------------------------------------- StandardScaler

StandardScaler::StandardScaler(bool with_mean, bool with_scale) {
  declare_param("with_mean", ParamType::Boolean, Domain::booleans(), with_mean);
  declare_param("with_scale", ParamType::Boolean, Domain::booleans(), with_scale);
}

TagMap StandardScaler::get_tags() const {
  return estimator_tags("transformer", true, {{"feature_scitypes", kNumericOnly}});
}

DomainDescriptor StandardScaler::domain() const {
  return {Domain("tables of finite reals", [](const ParamValue& v) {
            return Domain::real_list().contains(v) || Domain::reals().contains(v);
          }),
          std::nullopt};
}

void StandardScaler::fit_canonical(const Table& X, const LabelVector*) {
  mean_.clear();
  scale_.clear();
  for (const auto& c : X.columns()) {
    const auto& v = c.numeric_values();
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (*lo == *hi) {
      mean_.push_back(*lo);
      scale_.push_back(1.0);
      continue;
    }
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / n);
    mean_.push_back(mean);
    scale_.push_back(sd > 0.0 ? sd : 1.0);
  }
}

Table StandardScaler::transform_canonical(const Table& X) const {
  const bool centre = param_as<bool>("with_mean");
  const bool scale = param_as<bool>("with_scale");
  std::vector<Column> out;
  for (std::size_t j = 0; j < X.n_cols(); ++j) {
    std::vector<double> v = X.column(j).numeric_values();
    for (double& x : v) {
      if (centre) x -= mean_[j];
      if (scale) x /= scale_[j];
    }
    out.push_back(Column::numeric(X.column(j).name(), std::move(v)));
  }
  if (out.empty()) return Table::empty_with_rows(X.n_rows());
  return Table(std::move(out));
}

ParamMap StandardScaler::learner_state() const { return {{"mean", mean_}, {"scale", scale_}}; }

void StandardScaler::load_learner_state(const ParamMap& state) {
  mean_ = state.at("mean").as<std::vector<double>>();
  scale_ = state.at("scale").as<std::vector<double>>();
  if (mean_.size() != scale_.size()) {
    throw Error(ErrorCode::SerializationError, "mean and scale differ in length");
  }
}

void StandardScaler::clear_learner_state() {
  mean_.clear();
  scale_.clear();
}

// ---------------------------------------------------------------- NaiveLastForecaster

TagMap NaiveLastForecaster::get_tags() const {
  return estimator_tags("forecaster", true, {{"min_train_length", 1}});
}

DomainDescriptor NaiveLastForecaster::domain() const { return real_line_domain(); }

void NaiveLastForecaster::fit_series(const TimeSeries& y) { last_ = y.values().back(); }

std::vector<double> NaiveLastForecaster::predict_offsets(const ForecastingHorizon& fh) const {
  return std::vector<double>(fh.size(), last_);
}

ParamMap NaiveLastForecaster::learner_state() const { return {{"last_value", last_}}; }

void NaiveLastForecaster::load_learner_state(const ParamMap& state) {
  last_ = state.at("last_value").as_real();
}

// ---------------------------------------------------------------- SimpleExpSmoothing

SimpleExpSmoothing::SimpleExpSmoothing(double alpha) {
  declare_param("alpha", ParamType::Real, Domain::unit_interval_left_open(), alpha);
}

TagMap SimpleExpSmoothing::get_tags() const {
  return estimator_tags("forecaster", true, {{"min_train_length", 1}});
}

DomainDescriptor SimpleExpSmoothing::domain() const { return real_line_domain(); }

void SimpleExpSmoothing::fit_series(const TimeSeries& y) {
  const double alpha = real_param("alpha");
  const auto& v = y.values();
  double level = v.front();
  for (std::size_t t = 1; t < v.size(); ++t) level = alpha * v[t] + (1.0 - alpha) * level;
  level_ = level;
}

std::vector<double> SimpleExpSmoothing::predict_offsets(const ForecastingHorizon& fh) const {
  return std::vector<double>(fh.size(), level_);
}

ParamMap SimpleExpSmoothing::learner_state() const { return {{"level", level_}}; }

void SimpleExpSmoothing::load_learner_state(const ParamMap& state) {
  level_ = state.at("level").as_real();
}

}  // namespace scitype
