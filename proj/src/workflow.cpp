#include "scitype/workflow.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <toml.hpp>

#include "scitype/data.hpp"

namespace scitype {

namespace {

[[noreturn]] void spec_error(const std::string& detail) { throw Error(ErrorCode::SpecParseError, detail); }

Json toml_to_json(const toml::node& node) {
  if (const auto* t = node.as_table()) {
    Json out = Json::object();
    for (const auto& [k, v] : *t) out[std::string(k.str())] = toml_to_json(v);
    return out;
  }
  if (const auto* a = node.as_array()) {
    Json out = Json::array();
    for (const auto& v : *a) out.push_back(toml_to_json(v));
    return out;
  }
  if (const auto* v = node.as_string()) return Json(v->get());
  if (const auto* v = node.as_integer()) return Json(v->get());
  if (const auto* v = node.as_floating_point()) return Json(v->get());
  if (const auto* v = node.as_boolean()) return Json(v->get());
  spec_error("unsupported TOML value (dates and times are not accepted)");
}

const Json& section(const Json& doc, const char* name) {
  if (!doc.contains(name)) spec_error(std::string("missing section [") + name + "]");
  const Json& s = doc.at(name);
  if (!s.is_object()) spec_error(std::string("[") + name + "] must be a table");
  return s;
}

void reject_unknown(const Json& table, const char* name, std::initializer_list<std::string_view> allowed) {
  for (const auto& [k, v] : table.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == k;
    if (!ok) spec_error(std::string("unknown field '") + k + "' in [" + name + "]");
  }
}

std::string text_field(const Json& table, const char* section_name, const char* key,
                       std::optional<std::string> fallback = std::nullopt) {
  if (!table.contains(key)) {
    if (fallback) return *fallback;
    spec_error(std::string("missing field '") + key + "' in [" + section_name + "]");
  }
  if (!table.at(key).is_string()) {
    spec_error(std::string("field '") + key + "' in [" + section_name + "] must be a string");
  }
  return table.at(key).get<std::string>();
}

Json table_field(const Json& table, const char* section_name, const char* key) {
  if (!table.contains(key)) return Json::object();
  if (!table.at(key).is_object()) {
    spec_error(std::string("field '") + key + "' in [" + section_name + "] must be a table");
  }
  return table.at(key);
}

/// Re-raises library validation errors from spec parsing as SpecParseError.
template <class F>
auto as_spec_error(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    spec_error(where + ": " + e.what());
  }
}

SupervisedTask parse_supervised(const Json& t) {
  reject_unknown(t, "task", {"type", "target", "features", "loss", "flavor"});
  SupervisedTask task;
  task.target = text_field(t, "task", "target");
  if (t.contains("features")) {
    const Json& f = t.at("features");
    if (!f.is_array()) spec_error("field 'features' in [task] must be an array of strings");
    std::vector<std::string> names;
    for (const auto& n : f) {
      if (!n.is_string()) spec_error("field 'features' in [task] must be an array of strings");
      names.push_back(n.get<std::string>());
    }
    task.features = std::move(names);
  }
  const std::string flavor = text_field(t, "task", "flavor", "regression");
  task.flavor = as_spec_error("[task] flavor", [&] { return task_flavor_from_string(flavor); });
  const std::string default_loss = task.flavor == TaskFlavor::Classification ? "misclassification" : "squared";
  task.loss = text_field(t, "task", "loss", default_loss);
  as_spec_error("[task]", [&] {
    task.validate();
    return 0;
  });
  return task;
}

ForecastingTask parse_forecasting(const Json& t) {
  reject_unknown(t, "task", {"type", "fh", "variant", "loss", "target"});
  ForecastingTask task;
  if (!t.contains("fh") || !t.at("fh").is_array()) spec_error("field 'fh' in [task] must be an array of integers");
  std::vector<std::int64_t> offsets;
  for (const auto& h : t.at("fh")) {
    if (!h.is_number_integer()) spec_error("field 'fh' in [task] must be an array of integers");
    offsets.push_back(h.get<std::int64_t>());
  }
  task.fh = as_spec_error("[task] fh", [&] { return ForecastingHorizon(std::move(offsets)); });
  const std::string variant = text_field(t, "task", "variant", "fixed_horizon");
  task.variant = as_spec_error("[task] variant", [&] { return forecasting_variant_from_string(variant); });
  task.loss = text_field(t, "task", "loss", "squared");
  as_spec_error("[task]", [&] {
    task.validate();
    return 0;
  });
  return task;
}

TimeSeries series_from(const Table& data, const std::optional<std::string>& column) {
  const Column* col = nullptr;
  if (column) {
    col = data.find(*column);
    if (col == nullptr) throw Error(ErrorCode::MissingTarget, "series column '" + *column + "' not in data");
  } else {
    for (const auto& c : data.columns()) {
      if (c.scitype() != ColumnScitype::Numeric) continue;
      if (col != nullptr) {
        throw Error(ErrorCode::DataError, "several numeric columns; set [task] target to choose the series");
      }
      col = &c;
    }
    if (col == nullptr) throw Error(ErrorCode::DataError, "no numeric column to forecast");
  }
  if (col->scitype() != ColumnScitype::Numeric) {
    throw Error(ErrorCode::DataError, "series column '" + col->name() + "' is not numeric");
  }
  return TimeSeries(col->numeric_values());
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream os;
  os << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

Json WorkflowSpec::to_json() const {
  Json j = Json::object();
  Json est = Json::object();
  est["kind"] = estimator_kind;
  est["params"] = estimator_params;
  j["estimator"] = std::move(est);
  if (const auto* s = std::get_if<SupervisedTask>(&task)) {
    Json t = s->to_json();
    t["type"] = "supervised";
    j["task"] = std::move(t);
  } else {
    Json t = std::get<ForecastingTask>(task).to_json();
    t["type"] = "forecasting";
    if (series_column) t["target"] = *series_column;
    j["task"] = std::move(t);
  }
  Json data = Json::object();
  data["path"] = data_path.generic_string();
  data["format"] = data_format;
  j["data"] = std::move(data);
  Json splitter = Json::object();
  splitter["kind"] = splitter_kind;
  splitter["params"] = splitter_params;
  j["splitter"] = std::move(splitter);
  Json output = Json::object();
  output["path"] = output_path ? Json(output_path->generic_string()) : Json(nullptr);
  output["format"] = output_format;
  j["output"] = std::move(output);
  return j;
}

WorkflowSpec parse_workflow(std::string_view toml_text, const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = toml_to_json(toml::parse(toml_text));
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "invalid TOML at line " << e.source().begin.line << ": " << e.description();
    spec_error(os.str());
  }
  reject_unknown(doc, "top level", {"estimator", "task", "data", "splitter", "output"});

  WorkflowSpec spec;
  spec.base_dir = base_dir;

  const Json& est = section(doc, "estimator");
  reject_unknown(est, "estimator", {"kind", "params"});
  spec.estimator_kind = text_field(est, "estimator", "kind");
  spec.estimator_params = table_field(est, "estimator", "params");

  const Json& task = section(doc, "task");
  const std::string type = text_field(task, "task", "type");
  if (type == "supervised") {
    spec.task = parse_supervised(task);
  } else if (type == "forecasting") {
    spec.task = parse_forecasting(task);
    if (task.contains("target")) spec.series_column = text_field(task, "task", "target");
  } else {
    spec_error("unknown task type '" + type + "' (expected supervised or forecasting)");
  }

  const Json& data = section(doc, "data");
  reject_unknown(data, "data", {"path", "format"});
  spec.data_path = text_field(data, "data", "path");
  spec.data_format = text_field(data, "data", "format", "csv");
  if (spec.data_format != "csv") spec_error("unsupported data format '" + spec.data_format + "'");

  if (doc.contains("splitter")) {
    const Json& s = section(doc, "splitter");
    reject_unknown(s, "splitter", {"kind", "params"});
    spec.splitter_kind = text_field(s, "splitter", "kind");
    spec.splitter_params = table_field(s, "splitter", "params");
  } else {
    spec.splitter_kind = spec.is_forecasting() ? "temporal_holdout" : "kfold";
  }
  const ParamMap splitter_params = as_spec_error(
      "[splitter] params", [&] { return params_from_json(spec.splitter_params, Registry{}); });
  const Splitter splitter =
      as_spec_error("[splitter]", [&] { return Splitter::from_spec(spec.splitter_kind, splitter_params); });
  if (spec.is_forecasting() && splitter.kind() == SplitterKind::KFold) {
    spec_error("forecasting workflows need a holdout or temporal_holdout splitter");
  }

  if (doc.contains("output")) {
    const Json& o = section(doc, "output");
    reject_unknown(o, "output", {"path", "format"});
    if (o.contains("path")) spec.output_path = text_field(o, "output", "path");
    spec.output_format = text_field(o, "output", "format", "json");
    if (spec.output_format != "json") spec_error("unsupported output format '" + spec.output_format + "'");
  }
  return spec;
}

WorkflowSpec parse_workflow_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) spec_error("cannot read workflow file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_workflow(buf.str(), path.parent_path());
}

std::unique_ptr<Estimator> build_estimator(const WorkflowSpec& spec, const Registry& registry) {
  const KindDescriptor& kind = registry.kind(spec.estimator_kind);
  if (!registry.is_a(kind.scitype, "estimator")) {
    spec_error("kind '" + spec.estimator_kind + "' is a " + kind.scitype + ", not an estimator");
  }
  const ParamMap params = as_spec_error("[estimator] params", [&] {
    return params_from_json(spec.estimator_params, registry);
  });
  auto estimator = registry.create_estimator(spec.estimator_kind);
  estimator->set_params(params);
  return estimator;
}

Json run_workflow(const WorkflowSpec& spec, const Registry& registry) {
  auto estimator = build_estimator(spec, registry);
  const ParamMap splitter_params = params_from_json(spec.splitter_params, registry);
  const Splitter splitter = Splitter::from_spec(spec.splitter_kind, splitter_params);

  const std::filesystem::path data_path =
      spec.data_path.is_absolute() ? spec.data_path : spec.base_dir / spec.data_path;
  const Table data = read_csv(data_path);

  EvaluationReport report;
  if (const auto* task = std::get_if<SupervisedTask>(&spec.task)) {
    report = evaluate_supervised(*estimator, *task, data, splitter);
  } else {
    const TimeSeries y = series_from(data, spec.series_column);
    report = evaluate_forecaster(*estimator, std::get<ForecastingTask>(spec.task), y, splitter.train_fraction());
  }
  Json out = report.to_json();
  out["spec_echo"] = spec.to_json();
  out["generated_at"] = utc_timestamp();
  return out;
}

Json strip_timestamps(Json report) {
  if (report.is_object()) report.erase("generated_at");
  return report;
}

bool TagFilter::matches(const KindDescriptor& kind) const {
  const ParamValue* v = kind.tags.find(tag);
  if (v == nullptr) return false;
  return v->is<std::string>() ? v->as<std::string>() == value : v->render() == value;
}

TagFilter parse_tag_filter(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == text.size() ||
      text.find('=', eq + 1) != std::string_view::npos) {
    throw Error(ErrorCode::BadFilterSyntax, "filter must look like tag=value, got '" + std::string(text) + "'");
  }
  return TagFilter{std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

std::string render_kind_list(const Registry& registry, const std::optional<TagFilter>& filter) {
  static const std::vector<std::string> shown{"deterministic", "handles_missing", "is_composite"};
  std::vector<std::vector<std::string>> rows{{"KIND", "SCITYPE"}};
  for (const auto& t : shown) rows.front().push_back(t);
  for (const auto* k : registry.kinds()) {
    if (filter && !filter->matches(*k)) continue;
    std::vector<std::string> row{k->kind_name, k->scitype};
    for (const auto& t : shown) {
      const ParamValue* v = k->tags.find(t);
      row.push_back(v == nullptr ? "-" : v->render());
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> widths(rows.front().size(), 0);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], r[i].size());
  }
  std::ostringstream os;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << r[i];
      if (i + 1 < r.size()) os << std::string(widths[i] - r[i].size() + 2, ' ');
    }
    os << '\n';
  }
  return os.str();
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SpecParseError:
    case ErrorCode::BadFilterSyntax:
    case ErrorCode::Unregistered:
    case ErrorCode::UnknownParameter:
    case ErrorCode::DomainViolation:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NameCollision:
    case ErrorCode::AmbiguousParamFlattening:
      return 2;
    default:
      return 1;
  }
}

}  // namespace scitype
