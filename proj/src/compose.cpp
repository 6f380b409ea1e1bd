#include "scitype/compose.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "scitype/estimators.hpp"

namespace scitype {

namespace {

/// Component references of a shallow parameter map, in order, and the rest.
std::pair<std::vector<std::pair<std::string, EstimatorRef>>, ParamMap> split_refs(
    const ParamMap& params) {
  std::vector<std::pair<std::string, EstimatorRef>> refs;
  ParamMap rest;
  for (const auto& [k, v] : params) {
    if (v.is<EstimatorRef>()) {
      refs.emplace_back(k, v.as<EstimatorRef>());
    } else {
      rest.set(k, v);
    }
  }
  return {std::move(refs), std::move(rest)};
}

template <class T>
std::unique_ptr<T> component_from_ref(const std::string& name, const EstimatorRef& ref) {
  if (!ref.estimator) throw Error(ErrorCode::InvalidArgument, "component '" + name + "' is null");
  try {
    return clone_as<T>(*ref);
  } catch (const Error& e) {
    throw e.within(name);
  }
}

bool all_deterministic(const Estimator& e) {
  for (const auto& n : e.component_names()) {
    const TagMap tags = e.component(n).get_tags();
    const auto* d = tags.find("deterministic");
    if (d == nullptr || !d->as<bool>()) return false;
  }
  return true;
}

std::vector<double> mean_rows(const std::vector<LabelVector>& preds) {
  std::vector<double> out(preds.front().size(), 0.0);
  for (const auto& p : preds) {
    const auto& v = p.numeric();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
  }
  for (double& x : out) x /= static_cast<double>(preds.size());
  return out;
}

ParamValue vote(const std::vector<LabelVector>& preds, std::size_t row) {
  std::vector<std::pair<ParamValue, std::size_t>> counts;
  for (const auto& p : preds) {
    const ParamValue label = p.at(row);
    auto it = std::find_if(counts.begin(), counts.end(),
                           [&](const auto& c) { return c.first == label; });
    if (it == counts.end()) {
      counts.emplace_back(label, 1);
    } else {
      ++it->second;
    }
  }
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second ||
        (it->second == best->second && label_less(it->first, best->first))) {
      best = it;
    }
  }
  return best->first;
}

void check_aggregator(const std::string& aggregator, const std::string& scitype) {
  const bool classifier = scitype == "supervised_classifier";
  if ((aggregator == "mean") == classifier) {
    throw Error(ErrorCode::AggregatorMismatch, "aggregator '" + aggregator +
                                                   "' does not fit members of scitype " + scitype);
  }
}

std::string schema_scitype(ColumnScitype s) { return std::string(to_string(s)); }

}  // namespace

// ---------------------------------------------------------------- Pipeline

Pipeline::Pipeline(std::vector<Named<Transformer>> steps, Named<SupervisedLearner> final) {
  for (auto& [name, step] : steps) add_component(name, std::move(step));
  add_component(final.first, std::move(final.second));
}

std::unique_ptr<Pipeline> Pipeline::from_params(const ParamMap& params) {
  auto [refs, rest] = split_refs(params);
  if (refs.empty()) throw Error(ErrorCode::InvalidArgument, "a pipeline needs a final learner");
  std::vector<Named<Transformer>> steps;
  for (std::size_t i = 0; i + 1 < refs.size(); ++i) {
    steps.emplace_back(refs[i].first, component_from_ref<Transformer>(refs[i].first, refs[i].second));
  }
  Named<SupervisedLearner> final{
      refs.back().first, component_from_ref<SupervisedLearner>(refs.back().first, refs.back().second)};
  auto p = std::make_unique<Pipeline>(std::move(steps), std::move(final));
  if (!rest.empty()) p->set_params(rest);
  return p;
}

std::vector<std::string> Pipeline::step_names() const {
  auto names = component_names();
  names.pop_back();
  return names;
}

std::string Pipeline::final_name() const { return component_names().back(); }

TagMap Pipeline::get_tags() const {
  const auto names = component_names();
  const TagMap final_tags = component(names.back()).get_tags();
  ParamMap overrides{{"deterministic", all_deterministic(*this)}, {"is_composite", true}};
  const TagMap first_tags = component(names.front()).get_tags();
  if (const auto* fs = first_tags.find("feature_scitypes")) {
    overrides.set("feature_scitypes", *fs);
  }
  return final_tags.with(overrides);
}

DomainDescriptor Pipeline::domain() const { return component(final_name()).domain(); }

void Pipeline::check_component(const std::string& name, const Estimator& candidate) const {
  const auto names = component_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) return;
  if (name == names.back()) {
    if (dynamic_cast<const SupervisedLearner*>(&candidate) == nullptr) {
      throw Error(ErrorCode::ScitypeMismatch,
                  name + ": the final step must be a supervised learner, got " + candidate.scitype());
    }
  } else if (dynamic_cast<const Transformer*>(&candidate) == nullptr) {
    throw Error(ErrorCode::ScitypeMismatch,
                name + ": a pipeline step must be a transformer, got " + candidate.scitype());
  }
}

void Pipeline::fit_canonical(const Table& X, const LabelVector& y) {
  Table current = X;
  for (const auto& name : step_names()) {
    try {
      current = mutable_component_as<Transformer>(name).fit_transform(current, y);
    } catch (const Error& e) {
      throw e.within(name);
    }
  }
  const auto final = final_name();
  try {
    mutable_component_as<SupervisedLearner>(final).fit(current, y);
  } catch (const Error& e) {
    throw e.within(final);
  }
}

Table Pipeline::transform_steps(const Table& X) const {
  Table current = X;
  for (const auto& name : step_names()) {
    try {
      current = component_as<Transformer>(name).transform(current);
    } catch (const Error& e) {
      throw e.within(name);
    }
  }
  return current;
}

LabelVector Pipeline::predict_canonical(const Table& X) const {
  const Table transformed = transform_steps(X);
  const auto final = final_name();
  try {
    return component_as<SupervisedLearner>(final).predict(transformed);
  } catch (const Error& e) {
    throw e.within(final);
  }
}

// ---------------------------------------------------------------- Ensemble

Ensemble::Ensemble(std::vector<Named<SupervisedLearner>> members, const std::string& aggregator) {
  if (members.empty()) throw Error(ErrorCode::InvalidArgument, "an ensemble needs at least one member");
  declare_param("aggregator", ParamType::Text, Domain::text_one_of({"mean", "majority_vote"}),
                aggregator);
  for (auto& [name, member] : members) {
    if (member == nullptr) throw Error(ErrorCode::InvalidArgument, "member '" + name + "' is null");
    add_component(name, std::move(member));
  }
  check_aggregator(aggregator, member_scitype());
}

std::unique_ptr<Ensemble> Ensemble::from_params(const ParamMap& params) {
  auto [refs, rest] = split_refs(params);
  if (refs.empty()) throw Error(ErrorCode::InvalidArgument, "an ensemble needs at least one member");
  std::vector<Named<SupervisedLearner>> members;
  for (const auto& [name, ref] : refs) {
    members.emplace_back(name, component_from_ref<SupervisedLearner>(name, ref));
  }
  std::string aggregator = members.front().second->is_classifier() ? "majority_vote" : "mean";
  if (const auto* a = rest.find("aggregator")) {
    aggregator = a->as<std::string>();
    rest.erase("aggregator");
  }
  auto e = std::make_unique<Ensemble>(std::move(members), aggregator);
  if (!rest.empty()) e->set_params(rest);
  return e;
}

std::string Ensemble::member_scitype() const {
  return component(component_names().front()).scitype();
}

TagMap Ensemble::get_tags() const {
  const auto names = component_names();
  std::vector<std::string> accepted{"numeric", "categorical"};
  for (const auto& n : names) {
    const TagMap tags = component(n).get_tags();
    const auto* fs = tags.find("feature_scitypes");
    if (fs == nullptr) continue;
    const auto mine = fs->as<std::vector<std::string>>();
    std::erase_if(accepted, [&](const std::string& s) {
      return std::find(mine.begin(), mine.end(), s) == mine.end();
    });
  }
  ParamMap extra{{"feature_scitypes", accepted}, {"is_composite", true}};
  return estimator_tags(member_scitype(), all_deterministic(*this), extra);
}

DomainDescriptor Ensemble::domain() const {
  if (member_scitype() != "supervised_classifier") return real_line_domain();
  if (!is_fitted()) return label_set_domain(std::nullopt);
  std::vector<ParamValue> labels;
  for (const auto& n : component_names()) {
    const auto d = component(n).domain();
    if (!d.label_set) continue;
    for (const auto& l : *d.label_set) {
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
  }
  std::sort(labels.begin(), labels.end(), label_less);
  return label_set_domain(labels);
}

void Ensemble::validate_params(const ParamMap& updates) const {
  Estimator::validate_params(updates);
  if (const auto* a = updates.find("aggregator")) check_aggregator(a->as<std::string>(), member_scitype());
}

void Ensemble::check_component(const std::string& name, const Estimator& candidate) const {
  if (dynamic_cast<const SupervisedLearner*>(&candidate) == nullptr) {
    throw Error(ErrorCode::ScitypeMismatch,
                name + ": an ensemble member must be a supervised learner, got " + candidate.scitype());
  }
  if (component_names().empty()) return;
  if (candidate.scitype() != member_scitype()) {
    throw Error(ErrorCode::ScitypeMismatch, name + ": member scitype " + candidate.scitype() +
                                                " differs from " + member_scitype());
  }
}

void Ensemble::fit_canonical(const Table& X, const LabelVector& y) {
  for (const auto& name : component_names()) {
    try {
      mutable_component_as<SupervisedLearner>(name).fit(X, y);
    } catch (const Error& e) {
      throw e.within(name);
    }
  }
}

LabelVector Ensemble::predict_canonical(const Table& X) const {
  std::vector<LabelVector> preds;
  for (const auto& name : component_names()) {
    try {
      preds.push_back(component_as<SupervisedLearner>(name).predict(X));
    } catch (const Error& e) {
      throw e.within(name);
    }
  }
  if (param_as<std::string>("aggregator") == "mean") return LabelVector::real(mean_rows(preds));
  const std::size_t n = X.n_rows();
  if (preds.front().is_numeric()) {
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(vote(preds, i).as_real());
    return LabelVector::classes(std::move(out));
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(vote(preds, i).as<std::string>());
  return LabelVector::classes(std::move(out));
}

// ---------------------------------------------------------------- GridSearchTuner

std::string GridSearchTuner::encode_grid_entry(const std::string& key,
                                               const std::vector<ParamValue>& values) {
  Json arr = Json::array();
  for (const auto& v : values) arr.push_back(param_to_json(v));
  return key + "=" + arr.dump();
}

std::pair<std::string, std::vector<ParamValue>> GridSearchTuner::decode_grid_entry(
    const std::string& entry) {
  const auto eq = entry.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorCode::DomainViolation, "grid entry '" + entry + "' is not key=[values]");
  }
  std::string key = entry.substr(0, eq);
  Json arr;
  try {
    arr = Json::parse(entry.substr(eq + 1));
  } catch (const Json::parse_error&) {
    throw Error(ErrorCode::DomainViolation, "grid entry '" + entry + "' has malformed values");
  }
  if (!arr.is_array()) {
    throw Error(ErrorCode::DomainViolation, "grid entry '" + entry + "' must list a JSON array");
  }
  static const Registry no_kinds;
  std::vector<ParamValue> values;
  for (const auto& v : arr) {
    if (v.is_object()) {
      throw Error(ErrorCode::DomainViolation, "grid values must be plain values: " + entry);
    }
    values.push_back(param_from_json(v, no_kinds));
  }
  return {std::move(key), std::move(values)};
}

namespace {

std::vector<std::string> encode_grid(const ParamGrid& grid) {
  std::vector<std::string> out;
  for (const auto& [k, vs] : grid) out.push_back(GridSearchTuner::encode_grid_entry(k, vs));
  return out;
}

ParamGrid decode_grid(const std::vector<std::string>& entries) {
  ParamGrid grid;
  for (const auto& e : entries) {
    auto entry = GridSearchTuner::decode_grid_entry(e);
    for (const auto& [k, _] : grid) {
      if (k == entry.first) throw Error(ErrorCode::DomainViolation, "grid key '" + k + "' repeated");
    }
    grid.push_back(std::move(entry));
  }
  return grid;
}

/// Every grid key must address a parameter of `inner` and every value must
/// lie in that parameter's domain.
void check_grid_against(const ParamGrid& grid, const Estimator& inner) {
  for (const auto& [key, values] : grid) {
    const auto spec = inner.find_param_spec(key);
    if (!spec) throw Error(ErrorCode::UnknownParameter, "grid key '" + key + "' of " + inner.kind());
    for (const auto& v : values) {
      const auto c = coerce(v, spec->type);
      if (!c || !spec->domain.contains(*c)) {
        throw Error(ErrorCode::DomainViolation, "grid value " + key + " = " + v.render() +
                                                    " is not in " + spec->domain.description());
      }
    }
  }
}

std::string assignment(const std::string& key, const ParamValue& v) {
  return key + "=" + param_to_json(v).dump();
}

}  // namespace

GridSearchTuner::GridSearchTuner(std::unique_ptr<SupervisedLearner> inner, const ParamGrid& grid,
                                 const Splitter& splitter, std::string metric) {
  if (inner == nullptr) throw Error(ErrorCode::InvalidArgument, "tuner needs an inner learner");
  if (metric.empty()) metric = inner->is_classifier() ? "misclassification" : "squared";
  check_grid_against(grid, *inner);
  declare_param("grid", ParamType::TextList, Domain::text_list(), encode_grid(grid));
  declare_param("splitter", ParamType::Text,
                Domain::text_one_of({"kfold", "holdout", "temporal_holdout"}),
                std::string(to_string(splitter.kind())));
  declare_param("n_splits", ParamType::Integer, Domain::integers_at_least(2),
                splitter.kind() == SplitterKind::KFold ? splitter.k() : std::int64_t{5});
  declare_param("train_fraction", ParamType::Real, Domain::open_unit_interval(),
                splitter.kind() == SplitterKind::KFold ? 0.75 : splitter.train_fraction());
  declare_param("seed", ParamType::Integer, Domain::integers_at_least(-1),
                splitter.seed() ? static_cast<std::int64_t>(*splitter.seed()) : std::int64_t{-1});
  declare_param("metric", ParamType::Text, Domain::text_one_of(LossFunction::ids()), metric);
  add_component("inner", std::move(inner));
}

std::unique_ptr<GridSearchTuner> GridSearchTuner::from_params(const ParamMap& params) {
  auto [refs, rest] = split_refs(params);
  if (refs.size() != 1 || refs.front().first != "inner") {
    throw Error(ErrorCode::InvalidArgument, "a tuner has exactly one component, 'inner'");
  }
  auto inner = component_from_ref<SupervisedLearner>("inner", refs.front().second);
  ParamGrid grid;
  if (const auto* g = rest.find("grid")) {
    grid = decode_grid(g->as<std::vector<std::string>>());
    rest.erase("grid");
  }
  auto t = std::make_unique<GridSearchTuner>(std::move(inner), grid);
  if (!rest.empty()) t->set_params(rest);
  return t;
}

ParamGrid GridSearchTuner::grid() const {
  return decode_grid(param_as<std::vector<std::string>>("grid"));
}

Splitter GridSearchTuner::splitter() const {
  const auto& kind = param_as<std::string>("splitter");
  if (kind == "kfold") {
    const auto seed = param_as<std::int64_t>("seed");
    return Splitter::kfold(param_as<std::int64_t>("n_splits"),
                           seed < 0 ? std::nullopt : std::optional<std::uint64_t>(seed));
  }
  const double f = real_param("train_fraction");
  return kind == "holdout" ? Splitter::holdout(f) : Splitter::temporal_holdout(f);
}

LossFunction GridSearchTuner::metric() const {
  return LossFunction::by_id(param_as<std::string>("metric"));
}

std::vector<ParamMap> GridSearchTuner::grid_points() const {
  const ParamGrid g = grid();
  if (g.empty()) throw Error(ErrorCode::EmptyGrid, "the parameter grid has no keys");
  for (const auto& [k, vs] : g) {
    if (vs.empty()) throw Error(ErrorCode::EmptyGrid, "grid key '" + k + "' has no values");
  }
  std::vector<ParamMap> points;
  std::vector<std::size_t> pos(g.size(), 0);
  while (true) {
    ParamMap p;
    for (std::size_t i = 0; i < g.size(); ++i) p.set(g[i].first, g[i].second[pos[i]]);
    points.push_back(std::move(p));
    std::size_t i = g.size();
    while (i > 0) {
      --i;
      if (++pos[i] < g[i].second.size()) break;
      pos[i] = 0;
      if (i == 0) return points;
    }
  }
}

TagMap GridSearchTuner::get_tags() const {
  return component("inner").get_tags().with({{"is_composite", true}});
}

DomainDescriptor GridSearchTuner::domain() const {
  if (best_) return best_->domain();
  return component("inner").domain();
}

const std::vector<CvResult>& GridSearchTuner::cv_results() const {
  require_fitted();
  return results_;
}

ParamMap GridSearchTuner::best_params() const {
  require_fitted();
  return results_.at(best_index_).params;
}

std::size_t GridSearchTuner::best_index() const {
  require_fitted();
  return best_index_;
}

const SupervisedLearner& GridSearchTuner::best_estimator() const {
  require_fitted();
  return *best_;
}

void GridSearchTuner::validate_params(const ParamMap& updates) const {
  Estimator::validate_params(updates);
  const Estimator* inner = &component("inner");
  if (const auto* r = updates.find("inner")) inner = r->as<EstimatorRef>().estimator.get();
  ParamGrid g = grid();
  if (const auto* v = updates.find("grid")) g = decode_grid(v->as<std::vector<std::string>>());
  if (updates.contains("grid") || updates.contains("inner")) check_grid_against(g, *inner);
}

void GridSearchTuner::check_component(const std::string& name, const Estimator& candidate) const {
  if (dynamic_cast<const SupervisedLearner*>(&candidate) == nullptr) {
    throw Error(ErrorCode::ScitypeMismatch,
                name + ": a tuner wraps a supervised learner, got " + candidate.scitype());
  }
}

void GridSearchTuner::fit_canonical(const Table& X, const LabelVector& y) {
  const auto points = grid_points();
  const Splitter sp = splitter();
  const LossFunction loss = metric();
  const auto& inner = component_as<SupervisedLearner>("inner");

  std::vector<CvResult> results;
  for (const auto& point : points) {
    auto candidate = clone_as<SupervisedLearner>(inner);
    try {
      candidate->set_params(point);
      CvResult r{point, cross_validate(*candidate, X, y, sp, loss), 0.0};
      r.mean_loss = std::accumulate(r.fold_losses.begin(), r.fold_losses.end(), 0.0) /
                    static_cast<double>(r.fold_losses.size());
      results.push_back(std::move(r));
    } catch (const Error& e) {
      throw e.within("inner");
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].mean_loss < results[best].mean_loss) best = i;
  }
  auto refit = clone_as<SupervisedLearner>(inner);
  try {
    refit->set_params(points[best]);
    refit->fit(X, y);
  } catch (const Error& e) {
    throw e.within("inner");
  }
  results_ = std::move(results);
  best_index_ = best;
  best_ = std::move(refit);
}

LabelVector GridSearchTuner::predict_canonical(const Table& X) const { return best_->predict(X); }

ParamMap GridSearchTuner::learner_state() const {
  std::vector<double> means, folds;
  for (const auto& r : results_) {
    means.push_back(r.mean_loss);
    folds.insert(folds.end(), r.fold_losses.begin(), r.fold_losses.end());
  }
  std::vector<std::string> best;
  for (const auto& [k, v] : results_.at(best_index_).params) best.push_back(assignment(k, v));
  ParamMap out{{"best_index", static_cast<std::int64_t>(best_index_)},
               {"best_score", results_.at(best_index_).mean_loss},
               {"best_params", best},
               {"cv_mean_losses", means},
               {"cv_fold_losses", folds}};
  out.merge(best_->get_fitted_params().prefixed("best_estimator"));
  return out;
}

void GridSearchTuner::load_learner_state(const ParamMap& state) {
  const auto points = grid_points();
  const auto index = state.at("best_index").as<std::int64_t>();
  const auto& means = state.at("cv_mean_losses").as<std::vector<double>>();
  const auto& folds = state.at("cv_fold_losses").as<std::vector<double>>();
  if (index < 0 || static_cast<std::size_t>(index) >= points.size() || means.size() != points.size() ||
      folds.size() % points.size() != 0) {
    throw Error(ErrorCode::SerializationError, "tuner state does not match its grid");
  }
  const std::size_t per = folds.size() / points.size();
  std::vector<CvResult> results;
  for (std::size_t i = 0; i < points.size(); ++i) {
    results.push_back({points[i],
                       std::vector<double>(folds.begin() + static_cast<std::ptrdiff_t>(i * per),
                                           folds.begin() + static_cast<std::ptrdiff_t>((i + 1) * per)),
                       means[i]});
  }
  auto best = clone_as<SupervisedLearner>(component("inner"));
  best->set_params(points[static_cast<std::size_t>(index)]);
  best->restore_fitted(state.nested("best_estimator"));
  results_ = std::move(results);
  best_index_ = static_cast<std::size_t>(index);
  best_ = std::move(best);
}

void GridSearchTuner::clear_learner_state() {
  results_.clear();
  best_index_ = 0;
  best_.reset();
}

// ---------------------------------------------------------------- ReducedForecaster

ReducedForecaster::ReducedForecaster(std::unique_ptr<SupervisedLearner> regressor,
                                     std::int64_t window_length, const std::string& strategy,
                                     std::int64_t max_horizon) {
  if (regressor == nullptr) throw Error(ErrorCode::InvalidArgument, "reduction needs a regressor");
  declare_param("window_length", ParamType::Integer, Domain::integers_at_least(1), window_length);
  declare_param("strategy", ParamType::Text, Domain::text_one_of({"recursive", "direct"}), strategy);
  declare_param("max_horizon", ParamType::Integer, Domain::integers_at_least(1), max_horizon);
  add_component("regressor", std::move(regressor));
}

std::unique_ptr<ReducedForecaster> ReducedForecaster::from_params(const ParamMap& params) {
  auto [refs, rest] = split_refs(params);
  if (refs.size() != 1 || refs.front().first != "regressor") {
    throw Error(ErrorCode::InvalidArgument, "a reduction has exactly one component, 'regressor'");
  }
  auto f = std::make_unique<ReducedForecaster>(
      component_from_ref<SupervisedLearner>("regressor", refs.front().second));
  if (!rest.empty()) f->set_params(rest);
  return f;
}

TagMap ReducedForecaster::get_tags() const {
  return estimator_tags("forecaster", all_deterministic(*this),
                        {{"min_train_length", 2}, {"is_composite", true}});
}

DomainDescriptor ReducedForecaster::domain() const { return real_line_domain(); }

std::size_t ReducedForecaster::min_train_length() const {
  const auto w = static_cast<std::size_t>(param_as<std::int64_t>("window_length"));
  const auto h = static_cast<std::size_t>(param_as<std::int64_t>("max_horizon"));
  return is_direct() ? w + h : w + 1;
}

Table ReducedForecaster::window_row(const std::vector<double>& history, std::size_t window_length) {
  if (history.size() < window_length) {
    throw Error(ErrorCode::TooShort, "window needs " + std::to_string(window_length) + " values");
  }
  std::vector<Column> cols;
  for (std::size_t k = 1; k <= window_length; ++k) {
    cols.push_back(Column::numeric("lag_" + std::to_string(k), {history[history.size() - k]}));
  }
  return Table(std::move(cols));
}

std::pair<Table, LabelVector> ReducedForecaster::tabularize(const std::vector<double>& y,
                                                            std::size_t window_length,
                                                            std::size_t horizon) {
  if (window_length == 0 || horizon == 0) {
    throw Error(ErrorCode::InvalidArgument, "window length and horizon must be positive");
  }
  const std::size_t first = window_length - 1 + horizon;  // first target index
  if (y.size() <= first) {
    throw Error(ErrorCode::TooShort, "series of length " + std::to_string(y.size()) +
                                         " has no window of length " + std::to_string(window_length) +
                                         " with a target " + std::to_string(horizon) + " step(s) ahead");
  }
  std::vector<std::vector<double>> lags(window_length);
  std::vector<double> target;
  for (std::size_t t = first; t < y.size(); ++t) {
    const std::size_t end = t - horizon;  // last index inside the window
    for (std::size_t k = 1; k <= window_length; ++k) lags[k - 1].push_back(y[end + 1 - k]);
    target.push_back(y[t]);
  }
  std::vector<Column> cols;
  for (std::size_t k = 1; k <= window_length; ++k) {
    cols.push_back(Column::numeric("lag_" + std::to_string(k), std::move(lags[k - 1])));
  }
  return {Table(std::move(cols)), LabelVector::real(std::move(target))};
}

void ReducedForecaster::validate_params(const ParamMap& updates) const {
  Estimator::validate_params(updates);
}

void ReducedForecaster::check_component(const std::string& name, const Estimator& candidate) const {
  if (dynamic_cast<const SupervisedLearner*>(&candidate) == nullptr ||
      candidate.scitype() != "supervised_regressor") {
    throw Error(ErrorCode::ScitypeMismatch,
                name + ": reduction needs a supervised regressor, got " + candidate.scitype());
  }
}

void ReducedForecaster::fit_series(const TimeSeries& y) {
  const auto w = static_cast<std::size_t>(param_as<std::int64_t>("window_length"));
  const auto& values = y.values();
  std::vector<std::shared_ptr<const SupervisedLearner>> direct;
  try {
    if (is_direct()) {
      const auto& regressor = component_as<SupervisedLearner>("regressor");
      const auto horizons = static_cast<std::size_t>(param_as<std::int64_t>("max_horizon"));
      for (std::size_t h = 1; h <= horizons; ++h) {
        auto [X, target] = tabularize(values, w, h);
        auto model = clone_as<SupervisedLearner>(regressor);
        model->fit(X, target);
        direct.push_back(std::move(model));
      }
    } else {
      auto [X, target] = tabularize(values, w, 1);
      mutable_component_as<SupervisedLearner>("regressor").fit(X, target);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TooShort) throw;
    throw e.within("regressor");
  }
  history_.assign(values.end() - static_cast<std::ptrdiff_t>(w), values.end());
  direct_ = std::move(direct);
}

std::vector<double> ReducedForecaster::predict_offsets(const ForecastingHorizon& fh) const {
  const auto w = static_cast<std::size_t>(param_as<std::int64_t>("window_length"));
  std::vector<double> out;
  if (is_direct()) {
    const Table row = window_row(history_, w);
    for (auto h : fh.offsets()) {
      if (static_cast<std::size_t>(h) > direct_.size()) {
        throw Error(ErrorCode::HorizonBeyondData,
                    "offset " + std::to_string(h) + " exceeds max_horizon " + std::to_string(direct_.size()));
      }
      out.push_back(direct_[static_cast<std::size_t>(h) - 1]->predict(row).numeric().front());
    }
    return out;
  }
  const auto& regressor = component_as<SupervisedLearner>("regressor");
  std::vector<double> history = history_;
  std::size_t next = 0;
  for (std::int64_t step = 1; step <= fh.max(); ++step) {
    const double value = regressor.predict(window_row(history, w)).numeric().front();
    history.push_back(value);
    if (fh.offsets()[next] == step) {
      out.push_back(value);
      ++next;
    }
  }
  return out;
}

ParamMap ReducedForecaster::learner_state() const {
  ParamMap out{{"window", history_}};
  if (is_direct()) {
    for (std::size_t h = 0; h < direct_.size(); ++h) {
      out.merge(direct_[h]->get_fitted_params().prefixed("h" + std::to_string(h + 1)));
    }
  } else {
    out.merge(components_fitted_state());
  }
  return out;
}

void ReducedForecaster::load_learner_state(const ParamMap& state) {
  const auto w = static_cast<std::size_t>(param_as<std::int64_t>("window_length"));
  auto window = state.at("window").as<std::vector<double>>();
  if (window.size() != w) throw Error(ErrorCode::SerializationError, "window length mismatch");
  std::vector<std::shared_ptr<const SupervisedLearner>> direct;
  if (is_direct()) {
    const auto horizons = static_cast<std::size_t>(param_as<std::int64_t>("max_horizon"));
    for (std::size_t h = 1; h <= horizons; ++h) {
      auto model = clone_as<SupervisedLearner>(component("regressor"));
      model->restore_fitted(state.nested("h" + std::to_string(h)));
      direct.push_back(std::move(model));
    }
  } else {
    load_components_fitted_state(state);
  }
  history_ = std::move(window);
  direct_ = std::move(direct);
}

void ReducedForecaster::clear_learner_state() {
  history_.clear();
  direct_.clear();
}

// ---------------------------------------------------------------- contraction

const std::string* ContractionSurface::inner_key(std::string_view name) const noexcept {
  for (const auto& [outer, inner] : exposed) {
    if (outer == name) return &inner;
  }
  return nullptr;
}

ParamMap ContractionSurface::to_inner(const ParamMap& updates) const {
  ParamMap out;
  for (const auto& [k, v] : updates) {
    const std::string* key = inner_key(k);
    if (key == nullptr) {
      throw Error(ErrorCode::UnknownParameter,
                  fixed.contains(k) ? k + " is fixed in " + kind_name : k);
    }
    out.set(*key, v);
  }
  return out;
}

namespace {

ParamMap exposed_params(const ContractionSurface& s, const Estimator& inner) {
  const ParamMap deep = inner.get_params(true);
  ParamMap out;
  for (const auto& [outer, key] : s.exposed) out.set(outer, deep.at(key));
  return out;
}

std::vector<ParamSpec> exposed_specs(const ContractionSurface& s, const Estimator& inner) {
  std::vector<ParamSpec> out;
  for (const auto& [outer, key] : s.exposed) {
    auto spec = inner.find_param_spec(key);
    out.push_back(ParamSpec{outer, spec->type, spec->domain});
  }
  return out;
}

std::optional<ParamSpec> exposed_spec(const ContractionSurface& s, const Estimator& inner,
                                      std::string_view name) {
  const std::string* key = s.inner_key(name);
  if (key == nullptr) return std::nullopt;
  auto spec = inner.find_param_spec(*key);
  if (spec) spec->name = std::string(name);
  return spec;
}

template <class T>
std::unique_ptr<T> full_clone(const T& e) {
  auto c = e.clone();
  return std::unique_ptr<T>(static_cast<T*>(c.release()));
}

}  // namespace

ContractedLearner::ContractedLearner(std::shared_ptr<const ContractionSurface> surface,
                                     std::unique_ptr<SupervisedLearner> inner)
    : surface_(std::move(surface)), inner_(std::move(inner)) {}

ContractedLearner::ContractedLearner(const ContractedLearner& other)
    : Cloneable(other), surface_(other.surface_), inner_(full_clone(*other.inner_)) {}

TagMap ContractedLearner::get_tags() const {
  return inner_->get_tags().with({{"is_composite", false}});
}

ParamMap ContractedLearner::get_params(bool) const { return exposed_params(*surface_, *inner_); }

std::vector<ParamSpec> ContractedLearner::param_specs() const {
  return exposed_specs(*surface_, *inner_);
}

std::optional<ParamSpec> ContractedLearner::find_param_spec(std::string_view key) const {
  return exposed_spec(*surface_, *inner_, key);
}

void ContractedLearner::validate_params(const ParamMap& updates) const {
  inner_->clone_unfitted()->set_params(surface_->to_inner(updates));
}

void ContractedLearner::apply_params(const ParamMap& updates) {
  inner_->set_params(surface_->to_inner(updates));
}

void ContractedLearner::fit_canonical(const Table& X, const LabelVector& y) { inner_->fit(X, y); }

LabelVector ContractedLearner::predict_canonical(const Table& X) const { return inner_->predict(X); }

ParamMap ContractedLearner::learner_state() const {
  ParamMap s = inner_->get_fitted_params();
  s.erase("feature_names");
  s.erase("feature_scitypes");
  return s;
}

void ContractedLearner::load_learner_state(const ParamMap& state) {
  ParamMap full{{"feature_names", stored_schema().names}};
  std::vector<std::string> scitypes;
  for (auto s : stored_schema().scitypes) scitypes.push_back(schema_scitype(s));
  full.set("feature_scitypes", scitypes);
  full.merge(state);
  inner_->restore_fitted(full);
}

void ContractedLearner::clear_learner_state() {
  if (inner_ && inner_->is_fitted()) inner_ = clone_as<SupervisedLearner>(*inner_);
}

ContractedForecaster::ContractedForecaster(std::shared_ptr<const ContractionSurface> surface,
                                           std::unique_ptr<Forecaster> inner)
    : surface_(std::move(surface)), inner_(std::move(inner)) {}

ContractedForecaster::ContractedForecaster(const ContractedForecaster& other)
    : Cloneable(other), surface_(other.surface_), inner_(full_clone(*other.inner_)) {}

TagMap ContractedForecaster::get_tags() const {
  return inner_->get_tags().with({{"is_composite", false}});
}

ParamMap ContractedForecaster::get_params(bool) const { return exposed_params(*surface_, *inner_); }

std::vector<ParamSpec> ContractedForecaster::param_specs() const {
  return exposed_specs(*surface_, *inner_);
}

std::optional<ParamSpec> ContractedForecaster::find_param_spec(std::string_view key) const {
  return exposed_spec(*surface_, *inner_, key);
}

void ContractedForecaster::validate_params(const ParamMap& updates) const {
  inner_->clone_unfitted()->set_params(surface_->to_inner(updates));
}

void ContractedForecaster::apply_params(const ParamMap& updates) {
  inner_->set_params(surface_->to_inner(updates));
}

void ContractedForecaster::fit_series(const TimeSeries& y) { inner_->fit(y); }

std::vector<double> ContractedForecaster::predict_offsets(const ForecastingHorizon& fh) const {
  return inner_->predict(fh).values();
}

ParamMap ContractedForecaster::learner_state() const {
  ParamMap s = inner_->get_fitted_params();
  s.erase("cutoff");
  return s;
}

void ContractedForecaster::load_learner_state(const ParamMap& state) {
  ParamMap full{{"cutoff", stored_cutoff()}};
  full.merge(state);
  inner_->restore_fitted(full);
}

void ContractedForecaster::clear_learner_state() {
  if (inner_ && inner_->is_fitted()) inner_ = clone_as<Forecaster>(*inner_);
}

const KindDescriptor& contract(Registry& registry, const std::string& kind_name,
                               const Estimator& blueprint, const ParamMap& fixed) {
  if (registry.has_kind(kind_name)) {
    throw Error(ErrorCode::NameCollision, "kind '" + kind_name + "' is already registered");
  }
  std::shared_ptr<Estimator> proto = blueprint.clone_unfitted();
  proto->set_params(fixed);
  const bool learner = dynamic_cast<const SupervisedLearner*>(proto.get()) != nullptr;
  if (!learner && dynamic_cast<const Forecaster*>(proto.get()) == nullptr) {
    throw Error(ErrorCode::ScitypeMismatch,
                "only supervised learners and forecasters can be contracted, got " + proto->scitype());
  }

  auto surface = std::make_shared<ContractionSurface>();
  surface->kind_name = kind_name;
  surface->fixed = fixed;
  std::map<std::string, std::string> seen;
  for (const auto& [key, value] : proto->get_params(true)) {
    if (value.is<EstimatorRef>() || fixed.contains(key)) continue;
    const auto cut = key.rfind("__");
    std::string leaf = cut == std::string::npos ? key : key.substr(cut + 2);
    if (auto it = seen.find(leaf); it != seen.end()) {
      throw Error(ErrorCode::AmbiguousParamFlattening,
                  "'" + it->second + "' and '" + key + "' would both be exposed as '" + leaf + "'");
    }
    seen.emplace(leaf, key);
    surface->exposed.emplace_back(leaf, key);
  }

  std::shared_ptr<const ContractionSurface> frozen = surface;
  std::shared_ptr<const Estimator> prototype = proto;
  return registry.add_kind(kind_name, [frozen, prototype, learner](const ParamMap& params) {
    std::unique_ptr<Estimator> e;
    if (learner) {
      e = std::make_unique<ContractedLearner>(frozen, clone_as<SupervisedLearner>(*prototype));
    } else {
      e = std::make_unique<ContractedForecaster>(frozen, clone_as<Forecaster>(*prototype));
    }
    if (!params.empty()) e->set_params(params);
    return std::unique_ptr<Object>(std::move(e));
  });
}

}  // namespace scitype
